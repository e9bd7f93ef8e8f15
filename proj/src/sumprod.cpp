#include "bisector_lab/sumprod.hpp"

#include <algorithm>
#include <bit>

namespace bisector_lab {

namespace {

constexpr std::uint32_t kDenseLimit = 1u << 24;

void require_same(const ResidueSet& x, const ResidueSet& y) {
  if (!(x.modulus() == y.modulus()))
    throw LabError(ErrorCode::ModulusMismatch,
                   "sets over p=" + std::to_string(x.modulus().p()) + " and p=" + std::to_string(y.modulus().p()));
}

/// Membership bitmap over [0, p).
class Bitmap {
 public:
  explicit Bitmap(std::uint32_t p) : words_((p + 63) / 64, 0) {}
  void set(std::uint32_t x) { words_[x >> 6] |= std::uint64_t{1} << (x & 63); }
  bool test(std::uint32_t x) const { return (words_[x >> 6] >> (x & 63)) & 1; }
  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::vector<std::uint64_t> words_;
};

template <typename Op>
ResidueSet combine(const ResidueSet& x, const ResidueSet& y, Op op) {
  require_same(x, y);
  const auto& m = x.modulus();
  std::vector<Scalar> out;
  if (m.p() <= kDenseLimit && static_cast<std::uint64_t>(x.size()) * y.size() * 8 >= m.p()) {
    Bitmap seen(m.p());
    for (Scalar a : x.elems())
      for (Scalar b : y.elems()) seen.set(op(a, b).value);
    for (std::uint32_t v = 0; v < m.p(); ++v)
      if (seen.test(v)) out.emplace_back(v);
  } else {
    out.reserve(x.size() * y.size());
    for (Scalar a : x.elems())
      for (Scalar b : y.elems()) out.push_back(op(a, b));
  }
  return ResidueSet(m, std::move(out));
}

Count pow4(std::uint64_t r) {
  const Count s = Count{r} * r;
  return s * s;
}

}  // namespace

ResidueSet::ResidueSet(PrimeModulus m, std::vector<Scalar> elems) : m_(m), elems_(std::move(elems)) {
  for (Scalar s : elems_)
    if (s.value >= m_.p())
      throw LabError(ErrorCode::ModulusMismatch,
                     "residue " + std::to_string(s.value) + " is not reduced mod " + std::to_string(m_.p()));
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

bool ResidueSet::contains(Scalar x) const { return std::binary_search(elems_.begin(), elems_.end(), x); }

std::uint64_t RFunction::at(Scalar x) const {
  const auto it = std::lower_bound(counts.begin(), counts.end(), x,
                                   [](const auto& entry, Scalar key) { return entry.first < key; });
  return it != counts.end() && it->first == x ? it->second : 0;
}

Count RFunction::total() const {
  Count sum = 0;
  for (const auto& [x, c] : counts) sum += c;
  return sum;
}

ResidueSet RFunction::support() const {
  std::vector<Scalar> xs;
  xs.reserve(counts.size());
  for (const auto& [x, c] : counts) xs.push_back(x);
  return ResidueSet(m, std::move(xs));
}

ResidueSet difference_set(const ResidueSet& x, const ResidueSet& y) {
  const auto& m = x.modulus();
  return combine(x, y, [&](Scalar a, Scalar b) { return m.sub(a, b); });
}

ResidueSet sum_set(const ResidueSet& x, const ResidueSet& y) {
  const auto& m = x.modulus();
  return combine(x, y, [&](Scalar a, Scalar b) { return m.add(a, b); });
}

ResidueSet square_set(const ResidueSet& a) {
  std::vector<Scalar> out;
  for (Scalar x : a.elems()) out.push_back(a.modulus().sqr(x));
  return ResidueSet(a.modulus(), std::move(out));
}

DistLikeSets dist_like_sets(const ResidueSet& a, const ResidueSet* x) {
  const ResidueSet squared_diff = square_set(difference_set(a, a));
  const ResidueSet squares = square_set(a);
  DistLikeSets out{squared_diff, difference_set(squared_diff, squared_diff), sum_set(squared_diff, squared_diff),
                   difference_set(squares, squares), std::nullopt};
  if (x) out.x_minus = difference_set(*x, squared_diff);
  return out;
}

RFunction r_function(const ResidueSet& x, const ResidueSet& y) {
  require_same(x, y);
  const auto& m = x.modulus();
  RFunction r{m, {}};
  if (m.p() <= kDenseLimit && static_cast<std::uint64_t>(x.size()) * y.size() * 8 >= m.p()) {
    std::vector<std::uint64_t> dense(m.p(), 0);
    for (Scalar a : x.elems())
      for (Scalar b : y.elems()) ++dense[m.sub(a, b).value];
    for (std::uint32_t v = 0; v < m.p(); ++v)
      if (dense[v] != 0) r.counts.emplace_back(Scalar(v), dense[v]);
  } else {
    std::vector<Scalar> diffs;
    diffs.reserve(x.size() * y.size());
    for (Scalar a : x.elems())
      for (Scalar b : y.elems()) diffs.push_back(m.sub(a, b));
    std::sort(diffs.begin(), diffs.end());
    for (std::size_t i = 0; i < diffs.size();) {
      std::size_t j = i;
      while (j < diffs.size() && diffs[j] == diffs[i]) ++j;
      r.counts.emplace_back(diffs[i], j - i);
      i = j;
    }
  }
  return r;
}

Count e4_energy(const ResidueSet& a) {
  const ResidueSet sq = square_set(a);
  Count sum = 0;
  for (const auto& [d, c] : r_function(sq, sq).counts) sum += pow4(c);
  return sum;
}

ResidueSet level_set(const RFunction& r, const Rational& k) {
  if (k <= 0) throw LabError(ErrorCode::InvalidArgument, "level threshold must be positive");
  const BigInt& num = numerator(k);
  const BigInt& den = denominator(k);
  std::vector<Scalar> out;
  for (const auto& [x, c] : r.counts)
    if (BigInt(c) * den >= num) out.push_back(x);
  return ResidueSet(r.m, std::move(out));
}

Rational popularity_threshold(const ResidueSet& a) {
  const ResidueSet sq = square_set(a);
  const std::size_t d = difference_set(sq, sq).size();
  if (d == 0) return Rational(0);
  return Rational(BigInt(a.size()) * a.size(), BigInt(2 * d));
}

PopularData popular_data(const ResidueSet& a) {
  ResidueSet squares = square_set(a);
  ResidueSet differences = difference_set(squares, squares);
  RFunction r = r_function(squares, squares);
  const Rational threshold = differences.empty()
                                 ? Rational(0)
                                 : Rational(BigInt(a.size()) * a.size(), BigInt(2 * differences.size()));
  ResidueSet popular = threshold > 0 ? level_set(r, threshold) : ResidueSet(a.modulus());
  return PopularData{std::move(squares), std::move(differences), std::move(r), threshold, std::move(popular)};
}

ResidueSet popular_set_P(const ResidueSet& a) { return popular_data(a).popular; }

ResidueSet p_shifted(const PopularData& d, Scalar w) {
  const auto& m = d.differences.modulus();
  std::vector<Scalar> out;
  for (Scalar x : d.differences.elems())
    if (d.popular.contains(m.add(x, w))) out.push_back(x);
  return ResidueSet(m, std::move(out));
}

ResidueSet p_shifted(const ResidueSet& a, Scalar w) { return p_shifted(popular_data(a), w); }

namespace {

/// T_w over every w in D, sharing the membership structures.
class ShiftCounter {
 public:
  explicit ShiftCounter(const PopularData& d) : d_(d), m_(d.differences.modulus()) {
    const std::uint32_t p = m_.p();
    dense_ = p <= kDenseLimit;
    if (!dense_) return;
    popular_ = Bitmap(p);
    for (Scalar x : d.popular.elems()) popular_->set(x.value);
    // Bit j of the doubled -P map is set iff -(j mod p) is in P.
    negated_.assign((2 * std::size_t{p} + 127) / 64, 0);
    for (Scalar x : d.popular.elems()) {
      const std::uint32_t j = m_.neg(x).value;
      negated_[j >> 6] |= std::uint64_t{1} << (j & 63);
      negated_[(j + p) >> 6] |= std::uint64_t{1} << ((j + p) & 63);
    }
  }

  std::vector<Scalar> shifted(Scalar w) const {
    std::vector<Scalar> out;
    for (Scalar x : d_.differences.elems())
      if (in_popular(m_.add(x, w))) out.push_back(x);
    return out;
  }

  Count t(const std::vector<Scalar>& pw) const {
    const std::uint32_t p = m_.p();
    Count total = 0;
    if (!dense_ || pw.size() * 64 < p) {
      for (Scalar u : pw)
        for (Scalar v : pw)
          if (in_popular(m_.sub(u, v))) ++total;
      return total;
    }
    // For fixed u, v counts iff v - u is in -P: AND the P_w bitmap against
    // the -P map read from offset p - u.
    Bitmap bits(p);
    for (Scalar v : pw) bits.set(v.value);
    const auto& words = bits.words();
    for (Scalar u : pw) {
      const std::size_t offset = p - u.value;
      for (std::size_t k = 0; k < words.size(); ++k) {
        if (words[k] == 0) continue;
        total += std::popcount(words[k] & window(offset + 64 * k));
      }
    }
    return total;
  }

 private:
  bool in_popular(Scalar x) const { return dense_ ? popular_->test(x.value) : d_.popular.contains(x); }

  std::uint64_t window(std::size_t bit) const {
    const std::size_t i = bit >> 6, s = bit & 63;
    if (s == 0) return negated_[i];
    return (negated_[i] >> s) | (negated_[i + 1] << (64 - s));
  }

  const PopularData& d_;
  const PrimeModulus& m_;
  bool dense_ = false;
  std::optional<Bitmap> popular_;
  std::vector<std::uint64_t> negated_;
};

}  // namespace

Count t_w(const PopularData& d, Scalar w) {
  const ShiftCounter counter(d);
  return counter.t(counter.shifted(w));
}

Count t_w(const ResidueSet& a, Scalar w) { return t_w(popular_data(a), w); }

std::vector<std::pair<Scalar, Count>> t_w_table(const PopularData& d) {
  const ShiftCounter counter(d);
  std::vector<std::pair<Scalar, Count>> out;
  for (Scalar w : d.differences.elems()) out.emplace_back(w, counter.t(counter.shifted(w)));
  return out;
}

Count chi(const PopularData& d) {
  Count total = 0;
  for (const auto& [w, t] : t_w_table(d)) total += t;
  return total;
}

Count chi(const ResidueSet& a) { return chi(popular_data(a)); }

Count shifted_square_mass(const PopularData& d) {
  const ShiftCounter counter(d);
  Count total = 0;
  for (Scalar w : d.differences.elems()) {
    const Count s = counter.shifted(w).size();
    total += s * s;
  }
  return total;
}

std::vector<WProfileRow> sorted_w_profile(const PopularData& d) {
  const RFunction r = r_function(d.popular, d.differences);
  const ShiftCounter counter(d);
  std::vector<WProfileRow> rows;
  for (Scalar w : d.differences.elems()) {
    const std::uint64_t rw = r.at(w);
    const std::uint64_t shifted = counter.shifted(w).size();
    rows.push_back({w, rw, shifted, rw == shifted});
  }
  std::sort(rows.begin(), rows.end(), [](const WProfileRow& a, const WProfileRow& b) {
    return a.r != b.r ? a.r > b.r : a.w < b.w;
  });
  return rows;
}

std::vector<WProfileRow> sorted_w_profile(const ResidueSet& a) { return sorted_w_profile(popular_data(a)); }

ResidueSet w_level_set(const ResidueSet& a, const Rational& t, bool restrict_to_d) {
  const PopularData d = popular_data(a);
  const ResidueSet level = level_set(r_function(d.popular, d.differences), t);
  if (!restrict_to_d) return level;
  std::vector<Scalar> out;
  for (Scalar w : level.elems())
    if (d.differences.contains(w)) out.push_back(w);
  return ResidueSet(a.modulus(), std::move(out));
}

MKProfile mk_profile(const ResidueSet& a) {
  if (a.empty()) throw LabError(ErrorCode::EmptySet, "M/K profile of an empty set");
  const ResidueSet sq = square_set(a);
  const auto n = static_cast<long long>(a.size());
  return MKProfile{a.size(), Rational(static_cast<long long>(difference_set(a, a).size()), n),
                   Rational(static_cast<long long>(difference_set(sq, sq).size()), n)};
}

Count popular_pair_count(const ResidueSet& a) {
  const PopularData d = popular_data(a);
  const auto& m = a.modulus();
  Count total = 0;
  for (Scalar x : a.elems())
    for (Scalar y : a.elems())
      if (d.popular.contains(m.sub(m.sqr(x), m.sqr(y)))) ++total;
  return total;
}

}  // namespace bisector_lab
