#include "bisector_lab/incidence3.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>
#include <unordered_map>

#include "bisector_lab/parallel.hpp"

namespace bisector_lab {

namespace {

template <typename T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

Scalar eval(const CanonicalPlane& s, const Point3& r, const PrimeModulus& m) {
  return m.add(m.add(m.mul(s.n1, r.x1), m.mul(s.n2, r.x2)), m.mul(s.n3, r.x3));
}

/// Line through two distinct points: direction scaled so its first nonzero
/// coordinate is 1, base point the one whose coordinate at that index is 0.
struct Line3 {
  Point3 dir;
  Point3 base;

  friend constexpr auto operator<=>(const Line3&, const Line3&) = default;
};

Line3 line_through(const Point3& a, const Point3& b, const PrimeModulus& m) {
  Scalar d[3] = {m.sub(b.x1, a.x1), m.sub(b.x2, a.x2), m.sub(b.x3, a.x3)};
  Scalar q[3] = {a.x1, a.x2, a.x3};
  int lead = 0;
  while (d[lead].value == 0) ++lead;
  const Scalar inv = fp_inv(d[lead], m);
  for (auto& x : d) x = m.mul(x, inv);
  const Scalar t = q[lead];
  for (int i = 0; i < 3; ++i) q[i] = m.sub(q[i], m.mul(t, d[i]));
  return Line3{{d[0], d[1], d[2]}, {q[0], q[1], q[2]}};
}

bool contains_line(const CanonicalPlane& s, const Line3& l, const PrimeModulus& m) {
  return eval(s, l.dir, m).value == 0 && eval(s, l.base, m) == s.c;
}

}  // namespace

CanonicalPlane make_plane(Scalar n1, Scalar n2, Scalar n3, Scalar c, const PrimeModulus& m) {
  const Scalar lead = n1.value != 0 ? n1 : n2.value != 0 ? n2 : n3;
  if (lead.value == 0) throw LabError(ErrorCode::InvalidArgument, "plane normal is zero");
  const Scalar inv = fp_inv(lead, m);
  return CanonicalPlane{m.mul(n1, inv), m.mul(n2, inv), m.mul(n3, inv), m.mul(c, inv)};
}

bool on_plane(const Point3& r, const CanonicalPlane& s, const PrimeModulus& m) { return eval(s, r, m) == s.c; }

IncidenceConfig::IncidenceConfig(PrimeModulus m, std::vector<Point3> points, std::vector<CanonicalPlane> planes)
    : m_(m), points_(std::move(points)), planes_(std::move(planes)) {
  sort_unique(points_);
  sort_unique(planes_);
}

Count incidence_count(const IncidenceConfig& cfg, unsigned threads) {
  const auto& m = cfg.modulus();
  const auto pts = cfg.points();
  const auto planes = cfg.planes();
  if (threads == 0) threads = 1;
  std::vector<Count> partial(threads, 0);

  if (static_cast<double>(pts.size()) * static_cast<double>(planes.size()) <= 1e7) {
    parallel_strided(planes.size(), threads, [&](unsigned w, std::size_t i) {
      for (const Point3& r : pts)
        if (on_plane(r, planes[i], m)) ++partial[w];
    });
  } else {
    // Planes sharing a normal differ only in c: evaluate each point once per
    // normal and count matching constants. Planes are sorted, so each normal
    // is a contiguous run.
    std::vector<std::size_t> runs;
    for (std::size_t i = 0; i < planes.size(); ++i)
      if (i == 0 || std::tie(planes[i].n1, planes[i].n2, planes[i].n3) !=
                        std::tie(planes[i - 1].n1, planes[i - 1].n2, planes[i - 1].n3))
        runs.push_back(i);
    runs.push_back(planes.size());
    parallel_strided(runs.size() - 1, threads, [&](unsigned w, std::size_t g) {
      const auto first = planes.begin() + runs[g], last = planes.begin() + runs[g + 1];
      for (const Point3& r : pts) {
        const Scalar v = eval(*first, r, m);
        if (std::binary_search(first, last, CanonicalPlane{first->n1, first->n2, first->n3, v})) ++partial[w];
      }
    });
  }
  Count total = 0;
  for (Count c : partial) total += c;
  return total;
}

std::uint64_t collinear_rich_k(const IncidenceConfig& cfg) {
  const auto& m = cfg.modulus();
  const auto pts = cfg.points();
  const auto planes = cfg.planes();
  if (pts.size() < 2 || planes.empty()) return 1;

  std::vector<Line3> lines;
  lines.reserve(pts.size() * (pts.size() - 1) / 2);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) lines.push_back(line_through(pts[i], pts[j], m));
  std::sort(lines.begin(), lines.end());

  // A line through k points of R appears k(k-1)/2 times.
  std::vector<std::pair<std::uint64_t, Line3>> rich;
  for (std::size_t i = 0; i < lines.size();) {
    std::size_t j = i;
    while (j < lines.size() && lines[j] == lines[i]) ++j;
    const auto pairs = static_cast<double>(j - i);
    const auto k = static_cast<std::uint64_t>(std::llround((1 + std::sqrt(1 + 8 * pairs)) / 2));
    rich.emplace_back(k, lines[i]);
    i = j;
  }
  std::sort(rich.begin(), rich.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

  std::uint64_t best = 1;
  for (const auto& [on_line, line] : rich) {
    if (on_line <= best) break;
    std::uint64_t containing = 0;
    for (const CanonicalPlane& s : planes) {
      if (contains_line(s, line, m) && ++containing >= on_line) break;
    }
    best = std::max(best, std::min(on_line, containing));
  }
  return best;
}

CheckReport rudnev_report(const IncidenceConfig& cfg, const PrimeModulus& m) {
  const Count incidences = incidence_count(cfg);
  const std::uint64_t k = collinear_rich_k(cfg) + 1;
  double r = static_cast<double>(cfg.points().size());
  double s = static_cast<double>(cfg.planes().size());
  const bool dual = r > s;
  if (dual) std::swap(r, s);
  const double t1 = r * s / m.p();
  const double t2 = std::sqrt(r) * s;
  const double t3 = static_cast<double>(k) * s;

  const std::string context = "p=" + std::to_string(m.p()) + " R=" + std::to_string(cfg.points().size()) +
                              " S=" + std::to_string(cfg.planes().size());
  CheckReport out = make_report("incidence_bound", to_rational(incidences), t1 + t2 + t3, context);
  out.details = {{"incidences", to_rational(incidences)},
                 {"k", Rational(k)},
                 {"term_rs_over_p", t1},
                 {"term_sqrt_r_s", t2},
                 {"term_k_s", t3}};
  if (dual) out.note = "dual: points and planes swapped since |R| > |S|";
  return out;
}

IncidenceConfig build_e4_config(std::span<const Scalar> x_values, std::span<const Scalar> u_values,
                                std::span<const Scalar> t_values, const PrimeModulus& m) {
  if (x_values.empty() || u_values.empty() || t_values.empty())
    throw LabError(ErrorCode::EmptyInput, "e4 encoding needs nonempty x, u and t sets");
  std::vector<Point3> points;
  std::vector<CanonicalPlane> planes;
  const Scalar two(2);
  for (Scalar x : x_values) {
    for (Scalar u : u_values) {
      for (Scalar t : t_values) {
        points.push_back({m.mul(two, x), u, m.sub(m.sub(m.sqr(x), m.sqr(u)), t)});
        planes.push_back(make_plane(u, m.neg(m.mul(two, x)), Scalar(1), m.sub(m.sub(m.sqr(x), m.sqr(u)), t), m));
      }
    }
  }
  return IncidenceConfig(m, std::move(points), std::move(planes));
}

}  // namespace bisector_lab
