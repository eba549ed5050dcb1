#include "capcover/profile.hpp"

#include "capcover/errors.hpp"

namespace capcover {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Rational Segment::at(const Rational& x) const {
  if (x1 == x0) return y0;
  return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

Rational Profile::capacity(const Rational& x) const {
  return std::visit(
      overloaded{
          [&](const RectShape& r) -> Rational { return (x >= r.a && x <= r.b) ? r.height : Rational(0); },
          [&](const TriangleShape& t) -> Rational {
            if (x < t.a || x > t.b) return 0;
            return t.dir == Slope::kRise ? Rational(t.slope * (x - t.a)) : Rational(t.slope * (t.b - x));
          },
          [&](const PiecewiseShape& p) -> Rational {
            if (p.points.empty() || x < p.points.front().first || x > p.points.back().first) return 0;
            for (size_t i = 0; i + 1 < p.points.size(); ++i) {
              const auto& [x0, y0] = p.points[i];
              const auto& [x1, y1] = p.points[i + 1];
              if (x <= x1) return Segment{x0, y0, x1, y1}.at(x);
            }
            return p.points.back().second;
          },
      },
      shape);
}

Rational Profile::left() const {
  return std::visit(overloaded{
                        [](const RectShape& r) { return r.a; },
                        [](const TriangleShape& t) { return t.a; },
                        [](const PiecewiseShape& p) { return p.points.empty() ? Rational(0) : p.points.front().first; },
                    },
                    shape);
}

Rational Profile::right() const {
  return std::visit(overloaded{
                        [](const RectShape& r) { return r.b; },
                        [](const TriangleShape& t) { return t.b; },
                        [](const PiecewiseShape& p) { return p.points.empty() ? Rational(0) : p.points.back().first; },
                    },
                    shape);
}

std::vector<Segment> Profile::segments() const {
  return std::visit(
      overloaded{
          [](const RectShape& r) { return std::vector<Segment>{{r.a, r.height, r.b, r.height}}; },
          [](const TriangleShape& t) {
            Rational top = t.slope * (t.b - t.a);
            if (t.dir == Slope::kRise) return std::vector<Segment>{{t.a, 0, t.b, top}};
            return std::vector<Segment>{{t.a, top, t.b, 0}};
          },
          [](const PiecewiseShape& p) {
            std::vector<Segment> out;
            if (p.points.size() == 1) out.push_back({p.points[0].first, p.points[0].second, p.points[0].first, p.points[0].second});
            for (size_t i = 0; i + 1 < p.points.size(); ++i) {
              out.push_back({p.points[i].first, p.points[i].second, p.points[i + 1].first, p.points[i + 1].second});
            }
            return out;
          },
      },
      shape);
}

std::string Profile::kind() const {
  return std::visit(overloaded{
                        [](const RectShape&) { return std::string("rect"); },
                        [](const TriangleShape&) { return std::string("tri"); },
                        [](const PiecewiseShape&) { return std::string("pwl"); },
                    },
                    shape);
}

Rational Profile::peak() const {
  Rational best = 0;
  for (const auto& s : segments()) best = max(best, max(s.y0, s.y1));
  return best;
}

Profile make_rect(std::string id, Rational a, Rational b, Rational height, Rational cost) {
  return Profile{std::move(id), RectShape{std::move(a), std::move(b), std::move(height)}, std::move(cost), std::nullopt};
}

Profile make_triangle(std::string id, Rational a, Rational b, Slope dir, Rational cost, Rational slope) {
  return Profile{std::move(id), TriangleShape{std::move(a), std::move(b), dir, std::move(slope)}, std::move(cost),
                 std::nullopt};
}

void validate(const Profile& profile) {
  auto fail = [&](const std::string& what) { throw InputError("profile '" + profile.id + "': " + what); };
  if (profile.cost < 0) fail("cost must be >= 0");
  std::visit(overloaded{
                 [&](const RectShape& r) {
                   if (r.b < r.a) fail("b < a");
                   if (r.height < 0) fail("height must be >= 0");
                 },
                 [&](const TriangleShape& t) {
                   if (t.b < t.a) fail("b < a");
                   if (t.slope < 0) fail("slope must be >= 0");
                 },
                 [&](const PiecewiseShape& p) {
                   if (p.points.empty()) fail("pwl needs at least one point");
                   for (size_t i = 0; i < p.points.size(); ++i) {
                     if (p.points[i].second < 0) fail("pwl capacity must be >= 0");
                     if (i > 0 && p.points[i].first <= p.points[i - 1].first) fail("pwl x must be strictly increasing");
                   }
                 },
             },
             profile.shape);
}

}  // namespace capcover
