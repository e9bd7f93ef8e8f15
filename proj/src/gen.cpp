#include "bisector_lab/gen.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <vector>

namespace bisector_lab {

namespace {

constexpr std::pair<Family, const char*> kFamilies[] = {
    {Family::RandomPlane, "random_plane"},
    {Family::Cartesian, "cartesian"},
    {Family::Circle, "circle"},
    {Family::LineSubset, "line_subset"},
    {Family::RandomResidue, "random_residue"},
    {Family::ArithmeticProgression, "arithmetic_progression"},
};

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based stream: draw(i) depends only on the key and i.
class Stream {
 public:
  explicit Stream(const GenSpec& s)
      : key_(splitmix(splitmix(splitmix(splitmix(s.seed) ^ static_cast<std::uint64_t>(s.family)) ^ s.p) ^ s.size)) {}

  std::uint64_t draw(std::uint64_t i) const { return splitmix(key_ ^ splitmix(i)); }
  /// Uniform in [0, bound) by rejection; `counter` advances past every draw used.
  std::uint64_t below(std::uint64_t bound, std::uint64_t& counter) const {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
      const std::uint64_t x = draw(counter++);
      if (x < limit) return x % bound;
    }
  }

 private:
  std::uint64_t key_;
};

/// Tonelli-Shanks; `a` must be a square.
Scalar sqrt_mod(Scalar a, const PrimeModulus& m) {
  if (a.value == 0) return a;
  const std::uint32_t p = m.p();
  std::uint32_t q = p - 1, s = 0;
  while ((q & 1) == 0) q >>= 1, ++s;
  std::uint32_t z = 2;
  while (fp_is_square(Scalar(z), m)) ++z;
  Scalar c = m.pow(Scalar(z), q), t = m.pow(a, q), r = m.pow(a, (q + 1) / 2);
  while (t.value != 1) {
    std::uint32_t i = 0;
    for (Scalar u = t; u.value != 1; u = m.sqr(u)) ++i;
    Scalar b = c;
    for (std::uint32_t j = 0; j + 1 < s - i; ++j) b = m.sqr(b);
    r = m.mul(r, b);
    c = m.sqr(b);
    t = m.mul(t, c);
    s = i;
  }
  return r;
}

std::uint64_t parse_u64(const std::string& field, const char* what) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size())
    throw LabError(ErrorCode::ParseError, std::string("bad ") + what + " '" + field + "' in generator spec");
  return v;
}

std::int64_t parse_i64(const std::string& field, const std::string& key) {
  std::int64_t v = 0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size())
    throw LabError(ErrorCode::ParseError, "bad value '" + field + "' for parameter " + key);
  return v;
}

/// `size` distinct indices in [0, ground), resampling on collision while that
/// terminates quickly and selecting a shuffled prefix otherwise.
std::vector<std::uint64_t> sample_indices(const Stream& stream, std::uint64_t ground, std::uint64_t size) {
  std::vector<std::uint64_t> out;
  std::uint64_t counter = 0;
  if (size <= ground / 2) {
    std::set<std::uint64_t> seen;
    while (seen.size() < size) {
      const std::uint64_t x = stream.below(ground, counter);
      if (seen.insert(x).second) out.push_back(x);
    }
    return out;
  }
  std::vector<std::uint64_t> all(ground);
  for (std::uint64_t i = 0; i < ground; ++i) all[i] = i;
  for (std::uint64_t i = 0; i < size; ++i) std::swap(all[i], all[i + stream.below(ground - i, counter)]);
  all.resize(size);
  return all;
}

void require_size(const GenSpec& s, std::uint64_t ground) {
  if (s.size > ground)
    throw LabError(ErrorCode::SizeTooLarge,
                   "size " + std::to_string(s.size) + " exceeds the " + std::to_string(ground) + " available elements");
}

ResidueSet progression(const PrimeModulus& m, std::int64_t start, std::int64_t step, std::uint64_t size) {
  const Scalar a = m.scalar(start), d = m.scalar(step);
  if (d.value == 0 && size > 1) throw LabError(ErrorCode::InvalidArgument, "progression step is 0 mod p");
  std::vector<Scalar> out;
  Scalar x = a;
  for (std::uint64_t i = 0; i < size; ++i, x = m.add(x, d)) out.push_back(x);
  return ResidueSet(m, std::move(out));
}

ResidueSet random_residues(const GenSpec& s, const PrimeModulus& m) {
  require_size(s, m.p());
  std::vector<Scalar> out;
  for (std::uint64_t x : sample_indices(Stream(s), m.p(), s.size)) out.emplace_back(static_cast<std::uint32_t>(x));
  return ResidueSet(m, std::move(out));
}

}  // namespace

std::string to_string(Family f) {
  for (const auto& [family, name] : kFamilies)
    if (family == f) return name;
  return "unknown";
}

Family parse_family(const std::string& name) {
  for (const auto& [family, text] : kFamilies)
    if (name == text) return family;
  throw LabError(ErrorCode::ParseError, "unknown generator family '" + name + "'");
}

bool is_plane_family(Family f) { return f != Family::RandomResidue && f != Family::ArithmeticProgression; }

std::int64_t GenSpec::param(const std::string& key, std::int64_t fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

GenSpec parse_genspec(const std::string& text) {
  std::vector<std::string> fields;
  std::stringstream in(text);
  for (std::string f; std::getline(in, f, ':');) fields.push_back(f);
  if (fields.size() < 4 || fields.size() > 5)
    throw LabError(ErrorCode::ParseError, "generator spec must be family:p:size:seed[:k=v,...], got '" + text + "'");
  GenSpec s;
  s.family = parse_family(fields[0]);
  s.p = parse_u64(fields[1], "p");
  s.size = parse_u64(fields[2], "size");
  s.seed = parse_u64(fields[3], "seed");
  if (fields.size() == 5 && !fields[4].empty()) {
    std::stringstream params(fields[4]);
    for (std::string kv; std::getline(params, kv, ',');) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0)
        throw LabError(ErrorCode::ParseError, "generator parameter '" + kv + "' is not k=v");
      const std::string key = kv.substr(0, eq);
      s.params[key] = parse_i64(kv.substr(eq + 1), key);
    }
  }
  return s;
}

std::string to_string(const GenSpec& s) {
  std::string out = to_string(s.family) + ":" + std::to_string(s.p) + ":" + std::to_string(s.size) + ":" +
                    std::to_string(s.seed);
  if (!s.params.empty()) {
    char sep = ':';
    for (const auto& [k, v] : s.params) {
      out += sep + k + "=" + std::to_string(v);
      sep = ',';
    }
  }
  return out;
}

PlaneSet generate_plane(const GenSpec& s) {
  if (!is_plane_family(s.family))
    throw LabError(ErrorCode::InvalidArgument, to_string(s.family) + " generates residues, not points");
  const PrimeModulus m = make_modulus(s.p);
  const std::uint64_t p = m.p();
  std::vector<Point2> pts;

  switch (s.family) {
    case Family::RandomPlane: {
      require_size(s, p * p);
      for (std::uint64_t x : sample_indices(Stream(s), p * p, s.size))
        pts.push_back({Scalar(static_cast<std::uint32_t>(x / p)), Scalar(static_cast<std::uint32_t>(x % p))});
      break;
    }
    case Family::Cartesian: {
      require_size(s, p);
      const ResidueSet a = s.param("random", 0) != 0 ? random_residues(s, m)
                                                     : progression(m, s.param("a", 0), s.param("d", 1), s.size);
      for (Scalar x : a.elems())
        for (Scalar y : a.elems()) pts.push_back({x, y});
      break;
    }
    case Family::Circle: {
      const Point2 c{m.scalar(s.param("cx", 0)), m.scalar(s.param("cy", 0))};
      const Scalar r = m.scalar(s.param("r", 1));
      // For each x1, solve (x2 - c2)^2 = r - (x1 - c1)^2.
      for (std::uint32_t x = 0; x < p; ++x) {
        const Scalar rest = m.sub(r, m.sqr(m.sub(Scalar(x), c.x1)));
        if (!fp_is_square(rest, m)) continue;
        const Scalar y = sqrt_mod(rest, m);
        pts.push_back({Scalar(x), m.add(y, c.x2)});
        if (y.value != 0) pts.push_back({Scalar(x), m.sub(c.x2, y)});
      }
      if (s.size != 0 && s.size < pts.size()) {
        std::sort(pts.begin(), pts.end());
        std::vector<Point2> chosen;
        for (std::uint64_t i : sample_indices(Stream(s), pts.size(), s.size)) chosen.push_back(pts[i]);
        pts = std::move(chosen);
      }
      break;
    }
    case Family::LineSubset: {
      require_size(s, p);
      const Scalar x0 = m.scalar(s.param("x0", 0)), y0 = m.scalar(s.param("y0", 0));
      const Scalar dx = m.scalar(s.param("dx", 1)), dy = m.scalar(s.param("dy", 0));
      if (dx.value == 0 && dy.value == 0) throw LabError(ErrorCode::InvalidArgument, "line direction is zero");
      for (std::uint64_t t : sample_indices(Stream(s), p, s.size)) {
        const Scalar ts(static_cast<std::uint32_t>(t));
        pts.push_back({m.add(x0, m.mul(ts, dx)), m.add(y0, m.mul(ts, dy))});
      }
      break;
    }
    default:
      break;
  }
  return PlaneSet(m, std::move(pts));
}

ResidueSet generate_residue(const GenSpec& s) {
  if (is_plane_family(s.family))
    throw LabError(ErrorCode::InvalidArgument, to_string(s.family) + " generates points, not residues");
  const PrimeModulus m = make_modulus(s.p);
  if (s.family == Family::RandomResidue) return random_residues(s, m);
  require_size(s, m.p());
  return progression(m, s.param("a", 0), s.param("d", 1), s.size);
}

GeneratedSet generate(const GenSpec& s) {
  if (is_plane_family(s.family)) return generate_plane(s);
  return generate_residue(s);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(c);
}

namespace {

/// Lexicographic k-combinations of [0, n).
template <typename Visit>
void for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

void enumerate_subsets(const PrimeModulus& m, std::optional<std::size_t> k,
                       const std::function<void(const PlaneSet&)>& visit, std::uint64_t limit) {
  const std::uint64_t p = m.p();
  const std::uint64_t ground_size = p * p;
  std::vector<Point2> ground;
  auto build_ground = [&] {
    for (std::uint32_t x = 0; x < p; ++x)
      for (std::uint32_t y = 0; y < p; ++y) ground.push_back({Scalar(x), Scalar(y)});
  };

  if (!k) {
    if (ground_size > 16)
      throw LabError(ErrorCode::TooLarge, "full subset enumeration needs p^2 <= 16, got p = " + std::to_string(p));
    build_ground();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ground_size); ++mask) {
      std::vector<Point2> pts;
      for (std::uint64_t i = 0; i < ground_size; ++i)
        if ((mask >> i) & 1) pts.push_back(ground[i]);
      visit(PlaneSet(m, std::move(pts)));
    }
    return;
  }
  if (binomial(ground_size, *k) > limit)
    throw LabError(ErrorCode::TooLarge, "C(" + std::to_string(ground_size) + ", " + std::to_string(*k) +
                                            ") subsets exceed the limit of " + std::to_string(limit));
  build_ground();
  if (*k > ground_size) return;
  for_each_combination(ground_size, *k, [&](const std::vector<std::size_t>& idx) {
    std::vector<Point2> pts;
    for (std::size_t i : idx) pts.push_back(ground[i]);
    visit(PlaneSet(m, std::move(pts)));
  });
}

void enumerate_residue_subsets(const PrimeModulus& m, std::size_t k, const std::function<void(const ResidueSet&)>& visit,
                               std::uint64_t limit) {
  if (binomial(m.p(), k) > limit)
    throw LabError(ErrorCode::TooLarge, "C(" + std::to_string(m.p()) + ", " + std::to_string(k) +
                                            ") subsets exceed the limit of " + std::to_string(limit));
  if (k > m.p()) return;
  for_each_combination(m.p(), k, [&](const std::vector<std::size_t>& idx) {
    std::vector<Scalar> xs;
    for (std::size_t i : idx) xs.emplace_back(static_cast<std::uint32_t>(i));
    visit(ResidueSet(m, std::move(xs)));
  });
}

}  // namespace bisector_lab
