#include "bisector_lab/distcount.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_map>

#include "bisector_lab/parallel.hpp"
#include "pair_engine.hpp"

namespace bisector_lab {

namespace {

constexpr std::uint32_t kDenseHistogramLimit = 1u << 22;

/// Coordinates and norms in structure-of-arrays form for the hot loops.
struct PointColumns {
  std::vector<std::int64_t> x1, x2;
  std::vector<std::uint32_t> norm;

  PointColumns(const PlaneSet& e) {
    const auto& m = e.modulus();
    for (const Point2& q : e.points()) {
      x1.push_back(q.x1.value);
      x2.push_back(q.x2.value);
      norm.push_back(bisector_lab::norm(q, m).value);
    }
  }

  std::vector<std::uint32_t> first_coordinates() const { return {x1.begin(), x1.end()}; }

  std::uint32_t dist(std::size_t i, std::size_t j, const PrimeModulus& m) const noexcept {
    const std::int64_t d1 = x1[i] - x1[j];
    const std::int64_t d2 = x2[i] - x2[j];
    return m.reduce(static_cast<std::uint64_t>(d1 * d1) + static_cast<std::uint64_t>(d2 * d2));
  }
};

std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) noexcept {
  return a >= b ? a - b : a + p - b;
}

std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) noexcept {
  const std::uint32_t s = a + b;
  return s >= p ? s - p : s;
}

/// inv[x] for x in [1, p) via inv[x] = -(p / x) * inv[p mod x].
std::vector<std::uint32_t> inverse_table(const PrimeModulus& m) {
  const std::uint32_t p = m.p();
  std::vector<std::uint32_t> inv(p, 0);
  inv[1] = 1;
  for (std::uint32_t x = 2; x < p; ++x) {
    const std::uint64_t t = static_cast<std::uint64_t>(p / x) * inv[p % x];
    inv[x] = (p - m.reduce(t)) % p;
  }
  return inv;
}

DistanceProfile dense_profile(const PlaneSet& e, unsigned threads) {
  const auto& m = e.modulus();
  const PointColumns cols(e);
  const std::size_t n = e.size();
  const std::uint32_t p = m.p();

  struct Local {
    std::vector<std::uint64_t> nu;
    Count iso = 0;
    Count all = 0;
  };
  std::vector<Local> locals(threads);
  run_workers(threads, [&](unsigned w) {
    Local& L = locals[w];
    L.nu.assign(p, 0);
    std::vector<std::uint32_t> mult(p, 0);
    std::vector<std::uint32_t> seen(n);
    for (std::size_t c = w; c < n; c += threads) {
      std::uint64_t all_c = 0;
      for (std::size_t a = 0; a < n; ++a) {
        const std::uint32_t t = cols.dist(a, c, m);
        seen[a] = t;
        all_c += 2 * static_cast<std::uint64_t>(mult[t]++) + 1;
        ++L.nu[t];
      }
      const std::uint64_t zero = mult[0];
      L.all += all_c;
      L.iso += all_c - zero * zero;
      for (std::uint32_t t : seen) mult[t] = 0;
    }
  });

  DistanceProfile out;
  for (const Local& L : locals) {
    out.isosceles += L.iso;
    out.equidistant_triples += L.all;
  }
  for (std::uint32_t t = 0; t < p; ++t) {
    Count total = 0;
    for (const Local& L : locals) total += L.nu[t];
    if (total != 0) out.histogram.counts.emplace_back(Scalar(t), total);
  }
  return out;
}

DistanceProfile sparse_profile(const PlaneSet& e, unsigned threads) {
  const auto& m = e.modulus();
  const PointColumns cols(e);
  const std::size_t n = e.size();

  struct Local {
    std::unordered_map<std::uint32_t, std::uint64_t> nu;
    Count iso = 0;
    Count all = 0;
  };
  std::vector<Local> locals(threads);
  run_workers(threads, [&](unsigned w) {
    Local& L = locals[w];
    std::vector<std::uint32_t> dists(n);
    for (std::size_t c = w; c < n; c += threads) {
      for (std::size_t a = 0; a < n; ++a) dists[a] = cols.dist(a, c, m);
      std::sort(dists.begin(), dists.end());
      for (std::size_t i = 0; i < n;) {
        std::size_t j = i + 1;
        while (j < n && dists[j] == dists[i]) ++j;
        const Count run = j - i;
        L.all += run * run;
        if (dists[i] != 0) L.iso += run * run;
        L.nu[dists[i]] += j - i;
        i = j;
      }
    }
  });

  DistanceProfile out;
  std::unordered_map<std::uint32_t, Count> merged;
  for (const Local& L : locals) {
    out.isosceles += L.iso;
    out.equidistant_triples += L.all;
    for (auto [t, c] : L.nu) merged[t] += c;
  }
  for (auto [t, c] : merged) out.histogram.counts.emplace_back(Scalar(t), c);
  std::sort(out.histogram.counts.begin(), out.histogram.counts.end());
  return out;
}

Count rectangle_count_anisotropic(const PlaneSet& e, unsigned threads) {
  const auto& m = e.modulus();
  const PointColumns cols(e);
  const std::uint32_t p = m.p();
  const unsigned bits = detail::residue_bits(p);
  const Count n = e.size();

  // The key fixes x1(a) + x1(b), so pairs can be counted one sum window at a time.
  const auto first = cols.first_coordinates();
  auto run = [&]<typename Key>() {
    const detail::TriplePacker<Key> pack{bits};
    return detail::sum_squared_windowed_classes<Key>(first, p, detail::PairWindow::Sum, p, threads,
                                                     [&](std::size_t i, std::size_t j, Key& key) {
      const auto s1 = add_mod(static_cast<std::uint32_t>(cols.x1[i]), static_cast<std::uint32_t>(cols.x1[j]), p);
      const auto s2 = add_mod(static_cast<std::uint32_t>(cols.x2[i]), static_cast<std::uint32_t>(cols.x2[j]), p);
      key = pack(s1, s2, cols.dist(i, j, m));
      return true;
    });
  };
  const Count unordered = 3 * bits <= 64 ? run.template operator()<std::uint64_t>()
                                         : run.template operator()<unsigned __int128>();
  // Ordered classes double off-diagonal pairs; diagonal keys (2a, 0) are
  // singletons. The collinear solutions are (a,a,c,c) and (a,c,c,a).
  const Count ordered = 4 * unordered + n;
  return ordered - (2 * n * n - n);
}

Count rectangle_count_isotropic(const PlaneSet& e) {
  const auto& m = e.modulus();
  const auto pts = e.points();
  const std::size_t n = pts.size();
  struct Entry {
    Point2 sum;
    Scalar dist;
    std::uint32_t i, j;
  };
  std::vector<Entry> entries;
  entries.reserve(n * n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      entries.push_back({add(pts[i], pts[j], m), dist2(pts[i], pts[j], m), i, j});
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.sum, a.dist, a.i, a.j) < std::tie(b.sum, b.dist, b.i, b.j);
  });
  Count total = 0;
  for (std::size_t lo = 0; lo < entries.size();) {
    std::size_t hi = lo + 1;
    while (hi < entries.size() && entries[hi].sum == entries[lo].sum && entries[hi].dist == entries[lo].dist) ++hi;
    for (std::size_t x = lo; x < hi; ++x) {
      for (std::size_t y = lo; y < hi; ++y) {
        // Pairs (a, c) and (b, d) with a + c = b + d and ||a - c|| = ||b - d||.
        const Point2& a = pts[entries[x].i];
        const Point2& c = pts[entries[x].j];
        const Point2& b = pts[entries[y].i];
        const Point2& d = pts[entries[y].j];
        if (!is_degenerate_quad(a, b, c, d, m)) ++total;
      }
    }
    lo = hi;
  }
  return total;
}

}  // namespace

PlaneSet::PlaneSet(PrimeModulus m, std::vector<Point2> points) : m_(m), points_(std::move(points)) {
  for (const Point2& q : points_) {
    if (q.x1.value >= m_.p() || q.x2.value >= m_.p())
      throw LabError(ErrorCode::ModulusMismatch, "coordinate is not a residue mod " + std::to_string(m_.p()));
  }
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

bool PlaneSet::contains(const Point2& q) const { return std::binary_search(points_.begin(), points_.end(), q); }

Count DistanceHistogram::at(Scalar t) const {
  auto it = std::lower_bound(counts.begin(), counts.end(), t,
                             [](const auto& entry, Scalar key) { return entry.first < key; });
  return it != counts.end() && it->first == t ? it->second : 0;
}

Count DistanceHistogram::total() const {
  Count sum = 0;
  for (const auto& entry : counts) sum += entry.second;
  return sum;
}

DistanceProfile distance_profile(const PlaneSet& e, unsigned threads) {
  if (threads == 0) threads = 1;
  if (e.empty()) return {};
  return e.modulus().p() <= kDenseHistogramLimit ? dense_profile(e, threads) : sparse_profile(e, threads);
}

std::vector<Scalar> distance_set(const PlaneSet& e) {
  std::vector<Scalar> out;
  for (const auto& entry : distance_histogram(e).counts) out.push_back(entry.first);
  return out;
}

std::size_t nonzero_distance_count(const PlaneSet& e) {
  const auto delta = distance_set(e);
  return delta.size() - static_cast<std::size_t>(!delta.empty() && delta.front().value == 0);
}

DistanceHistogram distance_histogram(const PlaneSet& e, unsigned threads) {
  return distance_profile(e, threads).histogram;
}

Count second_moment(const DistanceHistogram& h) {
  Count sum = 0;
  for (const auto& entry : h.counts) sum += entry.second * entry.second;
  return sum;
}

Count second_moment(const PlaneSet& e, unsigned threads) { return second_moment(distance_histogram(e, threads)); }

Count isosceles_count(const PlaneSet& e, unsigned threads) { return distance_profile(e, threads).isosceles; }

Count bisector_incidences(const PlaneSet& e, const DistanceProfile& profile) {
  const Count n = e.size();
  Count total = profile.equidistant_triples - n * n;
  if (e.modulus().anisotropic()) return total;
  // Isotropic pairs a != b have no bisector, yet their equidistant points
  // were counted above.
  const auto& m = e.modulus();
  const auto pts = e.points();
  for (const Point2& a : pts) {
    for (const Point2& b : pts) {
      if (a == b || dist2(a, b, m).value != 0) continue;
      for (const Point2& c : pts)
        if (dist2(c, a, m) == dist2(c, b, m)) --total;
    }
  }
  return total;
}

Count bisector_incidences(const PlaneSet& e, unsigned threads) {
  return bisector_incidences(e, distance_profile(e, threads));
}

Count rectangle_count(const PlaneSet& e, unsigned threads) {
  if (threads == 0) threads = 1;
  if (e.size() < 2) return 0;
  return e.modulus().anisotropic() ? rectangle_count_anisotropic(e, threads) : rectangle_count_isotropic(e);
}

Count paraboloid_quadruples(const PlaneSet& e, unsigned threads) {
  if (threads == 0) threads = 1;
  const auto& m = e.modulus();
  const PointColumns cols(e);
  const std::uint32_t p = m.p();
  const std::uint32_t half = (p - 1) / 2;
  const unsigned bits = detail::residue_bits(p);

  // (a, b) and (b, a) carry opposite keys; count each unordered pair under the
  // orientation whose first nonzero difference coordinate is at most (p-1)/2.
  // Ordered pairs are visited with x1(b) - x1(a) in [0, (p-1)/2], which
  // leaves only the d1 = 0 orientation to resolve through d2.
  const auto first = cols.first_coordinates();
  auto run = [&]<typename Key>() {
    const detail::TriplePacker<Key> pack{bits};
    return detail::sum_squared_windowed_classes<Key>(first, p, detail::PairWindow::Difference, half + 1, threads,
                                                     [&](std::size_t i, std::size_t j, Key& key) {
      const auto a1 = static_cast<std::uint32_t>(cols.x1[i]), b1 = static_cast<std::uint32_t>(cols.x1[j]);
      const auto a2 = static_cast<std::uint32_t>(cols.x2[i]), b2 = static_cast<std::uint32_t>(cols.x2[j]);
      const std::uint32_t d1 = sub_mod(b1, a1, p), d2 = sub_mod(b2, a2, p);
      if (d1 == 0 && (d2 == 0 || d2 > half)) return false;
      key = pack(d1, d2, sub_mod(cols.norm[j], cols.norm[i], p));
      return true;
    });
  };
  const Count unordered = 3 * bits <= 64 ? run.template operator()<std::uint64_t>()
                                         : run.template operator()<unsigned __int128>();
  return 2 * unordered;
}

Count q_count(const PlaneSet& e, unsigned threads) {
  if (threads == 0) threads = 1;
  if (e.size() < 2) return 0;
  const auto& m = e.modulus();
  const PointColumns cols(e);
  const std::uint32_t p = m.p();
  const bool anisotropic = m.anisotropic();
  const std::uint64_t pairs = static_cast<std::uint64_t>(e.size()) * (e.size() - 1) / 2;

  std::vector<std::uint32_t> half_norm(e.size());
  const Scalar inv2 = fp_inv(Scalar(2), m);
  for (std::size_t i = 0; i < e.size(); ++i) half_norm[i] = m.mul(Scalar(cols.norm[i]), inv2).value;

  std::vector<std::uint32_t> inv;
  if (p <= (1u << 24) && p <= 8 * pairs + 1024) inv = inverse_table(m);
  auto inverse = [&](std::uint32_t x) { return inv.empty() ? fp_inv(Scalar(x), m).value : inv[x]; };

  // l_ab : (b - a) . X = (||b|| - ||a||) / 2, scaled by the first nonzero
  // coordinate of b - a. The key is (n1 flag, n2, c) in 63 bits.
  const Count unordered =
      detail::sum_squared_pair_classes<std::uint64_t>(e.size(), threads, [&](std::size_t i, std::size_t j, std::uint64_t& key) {
        const auto d1 = sub_mod(static_cast<std::uint32_t>(cols.x1[j]), static_cast<std::uint32_t>(cols.x1[i]), p);
        const auto d2 = sub_mod(static_cast<std::uint32_t>(cols.x2[j]), static_cast<std::uint32_t>(cols.x2[i]), p);
        if (!anisotropic && cols.dist(i, j, m) == 0) return false;
        const auto rhs = sub_mod(half_norm[j], half_norm[i], p);
        if (d1 != 0) {
          const std::uint64_t r = inverse(d1);
          key = (std::uint64_t{1} << 62) | (static_cast<std::uint64_t>(m.reduce(d2 * r)) << 31) | m.reduce(rhs * r);
        } else {
          key = (std::uint64_t{1} << 31) | m.reduce(static_cast<std::uint64_t>(rhs) * inverse(d2));
        }
        return true;
      });
  return 4 * unordered;
}

LiftedDifference lifted_difference(const Point2& a, const Point2& b, const PrimeModulus& m) {
  const Point2 d = sub(b, a, m);
  return LiftedDifference{m.add(d.x1, d.x1), m.add(d.x2, d.x2), m.sub(norm(b, m), norm(a, m))};
}

Count BisectorPartition::q() const {
  Count sum = 0;
  for (const auto& cls : classes) sum += Count{cls.size} * cls.size;
  return sum;
}

Count BisectorPartition::subclass_energy() const {
  Count sum = 0;
  for (const auto& cls : classes)
    for (const auto& sub : cls.subclasses) sum += Count{sub.second} * sub.second;
  return sum;
}

std::size_t BisectorPartition::max_subclasses() const {
  std::size_t best = 0;
  for (const auto& cls : classes) best = std::max(best, cls.subclasses.size());
  return best;
}

Count BisectorPartition::pair_count() const {
  Count sum = 0;
  for (const auto& cls : classes) sum += cls.size;
  return sum;
}

BisectorPartition bisector_partition(const PlaneSet& e) {
  const auto& m = e.modulus();
  std::vector<std::pair<CanonicalLine, LiftedDifference>> tagged;
  for (const Point2& a : e.points()) {
    for (const Point2& b : e.points()) {
      if (dist2(a, b, m).value == 0) continue;
      tagged.emplace_back(bisector(a, b, m), lifted_difference(a, b, m));
    }
  }
  std::sort(tagged.begin(), tagged.end());
  BisectorPartition out;
  for (std::size_t i = 0; i < tagged.size();) {
    BisectorClass cls{tagged[i].first, 0, {}};
    std::size_t j = i;
    while (j < tagged.size() && tagged[j].first == cls.line) {
      if (cls.subclasses.empty() || cls.subclasses.back().first != tagged[j].second)
        cls.subclasses.emplace_back(tagged[j].second, 0);
      ++cls.subclasses.back().second;
      ++cls.size;
      ++j;
    }
    out.classes.push_back(std::move(cls));
    i = j;
  }
  return out;
}

}  // namespace bisector_lab
