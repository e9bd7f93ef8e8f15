#pragma once

// Keyed aggregation over unordered index pairs: the sum over key classes of
// the squared class size.
//
// Keys are radix-partitioned by hash into buckets small enough for a cache
// resident hash table. A counting pass sizes the buckets, a second pass
// scatters into one contiguous buffer, and each bucket is then counted
// exactly. When the buffer would exceed the memory budget the hash space is
// split into passes that each recompute the keys.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <new>
#include <span>
#include <vector>

#include <sys/mman.h>

#include "bisector_lab/field.hpp"
#include "bisector_lab/parallel.hpp"

namespace bisector_lab::detail {

inline constexpr std::size_t kPairEngineBudgetBytes = std::size_t{7} << 28;  // 1.75 GiB

inline std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

/// 64-bit keys are stored through a bijective mixer, so the stored word is
/// both the identity and the hash. Wider keys are stored verbatim.
template <typename Key>
struct KeyStore;

template <>
struct KeyStore<std::uint64_t> {
  static std::uint64_t encode(std::uint64_t k) noexcept { return mix64(k); }
  static std::uint64_t hash(std::uint64_t stored) noexcept { return stored; }
};

template <>
struct KeyStore<unsigned __int128> {
  static unsigned __int128 encode(unsigned __int128 k) noexcept { return k; }
  static std::uint64_t hash(unsigned __int128 k) noexcept {
    return mix64(static_cast<std::uint64_t>(k) ^ mix64(static_cast<std::uint64_t>(k >> 64) + 0x9e3779b97f4a7c15ULL));
  }
};

/// Packs three residues of `bits` bits each.
template <typename Key>
struct TriplePacker {
  unsigned bits;
  Key operator()(std::uint32_t a, std::uint32_t b, std::uint32_t c) const noexcept {
    return static_cast<Key>(a) | (static_cast<Key>(b) << bits) | (static_cast<Key>(c) << (2 * bits));
  }
};

inline unsigned residue_bits(std::uint32_t p) { return static_cast<unsigned>(std::bit_width(p - 1)); }

/// Page-aligned scratch buffer, backed by transparent huge pages when the
/// kernel offers them; first-touch faults dominate the scatter otherwise.
template <typename T>
class ScratchBuffer {
 public:
  explicit ScratchBuffer(std::size_t count) {
    constexpr std::size_t kAlign = std::size_t{1} << 21;
    const std::size_t bytes = std::max<std::size_t>(kAlign, (count * sizeof(T) + kAlign - 1) / kAlign * kAlign);
    data_.reset(static_cast<T*>(std::aligned_alloc(kAlign, bytes)));
    if (!data_) throw std::bad_alloc();
#ifdef MADV_HUGEPAGE
    madvise(data_.get(), bytes, MADV_HUGEPAGE);
#endif
  }
  T* data() noexcept { return data_.get(); }

 private:
  struct Free {
    void operator()(T* p) const noexcept { std::free(p); }
  };
  std::unique_ptr<T, Free> data_;
};

/// Sum of u^2 over classes, where u counts unordered pairs {i < j} that map to
/// the same key. key_of(i, j, out) returns false to exclude a pair.
template <typename Key, typename KeyOf>
Count sum_squared_pair_classes(std::size_t n, unsigned threads, KeyOf&& key_of,
                               std::size_t budget_bytes = kPairEngineBudgetBytes) {
  using Store = KeyStore<Key>;
  if (n < 2) return 0;
  if (threads == 0) threads = 1;
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const std::uint64_t passes = std::max<std::uint64_t>(1, (pairs * sizeof(Key) + budget_bytes - 1) / budget_bytes);
  const unsigned sub_bits =
      static_cast<unsigned>(std::clamp<int>(std::bit_width(pairs / passes / 4096), 0, 18));
  const std::size_t subs = std::size_t{1} << sub_bits;

  auto pass_of = [&](std::uint64_t h) -> std::uint64_t {
    return passes == 1 ? 0 : ((h & 0xffffffffULL) * passes) >> 32;
  };
  auto sub_of = [&](std::uint64_t h) -> std::size_t { return sub_bits == 0 ? 0 : h >> (64 - sub_bits); };
  auto for_pairs = [&](unsigned w, auto&& visit) {
    Key key{};
    for (std::size_t i = w; i + 1 < n; i += threads)
      for (std::size_t j = i + 1; j < n; ++j)
        if (key_of(i, j, key)) visit(Store::encode(key));
  };

  // counts[w][pass * subs + sub]
  std::vector<std::vector<std::uint64_t>> counts(threads);
  run_workers(threads, [&](unsigned w) {
    auto& mine = counts[w];
    mine.assign(passes * subs, 0);
    for_pairs(w, [&](const Key& stored) {
      const std::uint64_t h = Store::hash(stored);
      ++mine[pass_of(h) * subs + sub_of(h)];
    });
  });

  std::uint64_t largest_pass = 0;
  for (std::uint64_t pass = 0; pass < passes; ++pass) {
    std::uint64_t size = 0;
    for (unsigned w = 0; w < threads; ++w)
      for (std::size_t s = 0; s < subs; ++s) size += counts[w][pass * subs + s];
    largest_pass = std::max(largest_pass, size);
  }
  ScratchBuffer<Key> buffer(largest_pass + 1);

  Count total = 0;
  std::vector<Count> partial(threads);
  std::vector<std::uint64_t> begin(subs + 1);
  std::vector<std::vector<std::uint64_t>> cursor(threads, std::vector<std::uint64_t>(subs));
  for (std::uint64_t pass = 0; pass < passes; ++pass) {
    std::uint64_t offset = 0;
    for (std::size_t s = 0; s < subs; ++s) {
      begin[s] = offset;
      for (unsigned w = 0; w < threads; ++w) {
        cursor[w][s] = offset;
        offset += counts[w][pass * subs + s];
      }
    }
    begin[subs] = offset;

    Key* out = buffer.data();
    run_workers(threads, [&](unsigned w) {
      auto& cur = cursor[w];
      for_pairs(w, [&](const Key& stored) {
        const std::uint64_t h = Store::hash(stored);
        if (pass_of(h) == pass) out[cur[sub_of(h)]++] = stored;
      });
    });

    std::fill(partial.begin(), partial.end(), Count{0});
    run_workers(threads, [&](unsigned w) {
      std::vector<Key> slot_key;
      std::vector<std::uint32_t> slot_count;
      for (std::size_t s = w; s < subs; s += threads) {
        const std::uint64_t lo = begin[s], hi = begin[s + 1];
        if (lo == hi) continue;
        const std::size_t cap = std::bit_ceil(static_cast<std::size_t>(2 * (hi - lo)));
        const std::size_t mask = cap - 1;
        slot_key.assign(cap, Key{});
        slot_count.assign(cap, 0);
        Count sum = 0;
        for (std::uint64_t q = lo; q < hi; ++q) {
          const Key& k = out[q];
          std::size_t slot = Store::hash(k) & mask;
          while (slot_count[slot] != 0 && slot_key[slot] != k) slot = (slot + 1) & mask;
          slot_key[slot] = k;
          // (u + 1)^2 - u^2
          sum += 2 * static_cast<Count>(slot_count[slot]++) + 1;
        }
        partial[w] += sum;
      }
    });
    for (Count c : partial) total += c;
  }
  return total;
}

}  // namespace bisector_lab::detail

namespace bisector_lab::detail {

/// Which pair coordinate a windowed enumeration slices by.
enum class PairWindow {
  Sum,         // (x1(i) + x1(j)) mod p over unordered pairs i < j
  Difference,  // (x1(j) - x1(i)) mod p over ordered pairs i != j
};

/// Sum of squared class sizes for keys that determine the window coordinate.
///
/// `x1` must be sorted ascending. Pairs are visited window by window over the
/// coordinate range [0, coordinate_end); since equal keys share a coordinate,
/// each window is counted independently in a table that fits in cache.
template <typename Key, typename KeyOf>
Count sum_squared_windowed_classes(std::span<const std::uint32_t> x1, std::uint32_t p, PairWindow window,
                                   std::uint32_t coordinate_end, unsigned threads, KeyOf&& key_of) {
  using Store = KeyStore<Key>;
  const std::size_t n = x1.size();
  if (n < 2 || coordinate_end == 0) return 0;
  if (threads == 0) threads = 1;

  constexpr std::uint64_t kTargetPerWindow = std::uint64_t{1} << 17;
  constexpr std::uint64_t kMaxTable = std::uint64_t{1} << 22;

  // first index with x1 >= v
  const bool dense_index = p <= (1u << 24);
  std::vector<std::uint32_t> first;
  if (dense_index) {
    first.assign(std::size_t{p} + 1, 0);
    std::size_t k = 0;
    for (std::uint32_t v = 0; v <= p; ++v) {
      while (k < n && x1[k] < v) ++k;
      first[v] = static_cast<std::uint32_t>(k);
    }
  }
  auto lower = [&](std::uint64_t v) -> std::size_t {
    if (v >= p) return n;
    if (dense_index) return first[v];
    return static_cast<std::size_t>(std::lower_bound(x1.begin(), x1.end(), static_cast<std::uint32_t>(v)) - x1.begin());
  };

  const std::uint64_t visited = window == PairWindow::Sum ? std::uint64_t{n} * (n - 1) / 2 : std::uint64_t{n} * (n - 1);
  const std::uint64_t width =
      std::clamp<std::uint64_t>(kTargetPerWindow * p / std::max<std::uint64_t>(visited, 1), 1, coordinate_end);
  const std::uint64_t windows = (coordinate_end + width - 1) / width;

  // Partner index ranges of point i for coordinates in [lo, hi).
  auto partner_ranges = [&](std::size_t i, std::uint64_t lo, std::uint64_t hi, auto&& visit) {
    const std::uint64_t w = hi - lo;
    const std::uint64_t start = window == PairWindow::Sum ? (lo + p - x1[i]) % p : (x1[i] + lo) % p;
    auto emit = [&](std::uint64_t a, std::uint64_t b) {
      std::size_t from = lower(a), to = lower(b);
      if (window == PairWindow::Sum) from = std::max(from, i + 1);
      if (from < to) visit(from, to);
    };
    if (start + w <= p) {
      emit(start, start + w);
    } else {
      emit(start, p);
      emit(0, start + w - p);
    }
  };

  struct Slot {
    Key key;
    std::uint32_t count;
  };
  struct Range {
    std::uint32_t i, from, to;
  };
  std::vector<Count> partial(threads, 0);
  run_workers(threads, [&](unsigned worker) {
    std::vector<Slot> table;
    std::vector<Range> ranges;
    Count sum = 0;
    for (std::uint64_t win = worker; win < windows; win += threads) {
      const std::uint64_t lo = win * width;
      const std::uint64_t hi = std::min<std::uint64_t>(lo + width, coordinate_end);
      std::uint64_t in_window = 0;
      ranges.clear();
      for (std::size_t i = 0; i < n; ++i)
        partner_ranges(i, lo, hi, [&](std::size_t from, std::size_t to) {
          ranges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(from), static_cast<std::uint32_t>(to)});
          in_window += to - from;
        });
      if (in_window == 0) continue;

      // Oversized windows (a single heavily shared coordinate) are split
      // further by key hash.
      const std::uint64_t splits = (in_window + kMaxTable - 1) / kMaxTable;
      const std::size_t cap = std::bit_ceil(static_cast<std::size_t>(2 * std::min(in_window, kMaxTable)));
      const std::size_t mask = cap - 1;
      for (std::uint64_t split = 0; split < splits; ++split) {
        table.assign(cap, Slot{});
        Key key{};
        for (const Range& r : ranges) {
          for (std::size_t j = r.from; j < r.to; ++j) {
            if (!key_of(r.i, j, key)) continue;
            const Key stored = Store::encode(key);
            const std::uint64_t h = Store::hash(stored);
            if (splits > 1 && (h >> 32) % splits != split) continue;
            std::size_t slot = h & mask;
            while (table[slot].count != 0 && table[slot].key != stored) slot = (slot + 1) & mask;
            table[slot].key = stored;
            sum += 2 * static_cast<Count>(table[slot].count++) + 1;
          }
        }
      }
    }
    partial[worker] = sum;
  });
  Count total = 0;
  for (Count c : partial) total += c;
  return total;
}

}  // namespace bisector_lab::detail
