#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tracelab/errors.hpp"
#include "tracelab/oracle.hpp"
#include "tracelab/walk.hpp"

namespace tracelab {

namespace {

void check_wr(std::int64_t t, std::int64_t w, std::int64_t r) {
  if (!(1 <= r && r <= w && w <= t)) {
    throw std::invalid_argument("time sets: need 1 <= r <= w <= t, got t=" +
                                std::to_string(t) + " w=" + std::to_string(w) +
                                " r=" + std::to_string(r));
  }
}

void record(TimeSetCensus& census, std::size_t q) {
  ++census.count;
  if (census.by_defects.size() <= q) census.by_defects.resize(q + 1, 0);
  ++census.by_defects[q];
}

// Walks every W by its run structure: runs of given lengths separated by
// gaps of at least one, with the tail of [t] left empty.
void generate_runs(std::int64_t t, std::int64_t w_left, std::int64_t r_left,
                   std::int64_t next_free, std::size_t buffer,
                   std::vector<std::size_t>& times, TimeSetCensus& census) {
  if (r_left == 0) {
    if (w_left == 0) {
      const TimeSet ts = make_time_set(times, buffer);
      record(census, ts.q);
    }
    return;
  }
  // Need room for w_left elements plus r_left - 1 separating gaps.
  for (std::int64_t start = next_free; start + w_left + (r_left - 1) - 1 <= t; ++start) {
    const std::int64_t max_len = w_left - (r_left - 1);
    for (std::int64_t len = 1; len <= max_len; ++len) {
      if (start + len - 1 > t) break;
      for (std::int64_t i = 0; i < len; ++i) times.push_back(static_cast<std::size_t>(start + i));
      generate_runs(t, w_left - len, r_left - 1, start + len + 1, buffer, times, census);
      times.resize(times.size() - static_cast<std::size_t>(len));
    }
  }
}

}  // namespace

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

BigInt count_time_sets_formula(std::int64_t t, std::int64_t w, std::int64_t r) {
  check_wr(t, w, r);
  return binomial(w - 1, r - 1) * binomial(t - w + 1, r);
}

TimeSetCensus enumerate_time_sets(std::int64_t t, std::int64_t w, std::int64_t r,
                                  std::size_t buffer) {
  check_wr(t, w, r);
  TimeSetCensus census;
  if (t <= 20) {
    // Bit i stands for time i + 1.
    const std::uint32_t limit = std::uint32_t{1} << t;
    const std::size_t defect_gap = 3 * buffer;
    for (std::uint32_t mask = 1; mask < limit; ++mask) {
      if (std::popcount(mask) != w) continue;
      const std::uint32_t run_ends = mask & ~(mask >> 1);
      if (std::popcount(run_ends) != r) continue;
      std::size_t q = 0;
      int last_end = -1;
      for (int i = 0; i < t; ++i) {
        const bool in = mask & (1u << i);
        const bool starts_run = in && (i == 0 || !(mask & (1u << (i - 1))));
        if (starts_run && last_end >= 0 &&
            static_cast<std::size_t>(i - (last_end + 1)) < defect_gap) {
          ++q;
        }
        if (run_ends & (1u << i)) last_end = i;
      }
      record(census, q);
    }
    return census;
  }
  if (t > 40) throw SizeLimitError("enumerate_time_sets: t must be at most 40");
  const BigInt expected = count_time_sets_formula(t, w, r);
  if (expected > 50'000'000) {
    throw SizeLimitError("enumerate_time_sets: census too large",
                         expected.convert_to<double>());
  }
  std::vector<std::size_t> times;
  generate_runs(t, w, r, 1, buffer, times, census);
  return census;
}

std::vector<std::size_t> sample_time_set(std::size_t t, std::size_t w, std::size_t r,
                                         Rng& rng) {
  check_wr(static_cast<std::int64_t>(t), static_cast<std::int64_t>(w),
           static_cast<std::int64_t>(r));
  if (r > t - w + 1) throw std::invalid_argument("sample_time_set: no such set exists");
  // Run lengths: a uniform composition of w into r parts.
  std::vector<std::size_t> cuts;
  {
    std::vector<std::size_t> interior(w - 1);
    std::iota(interior.begin(), interior.end(), std::size_t{1});
    std::sample(interior.begin(), interior.end(), std::back_inserter(cuts), r - 1, rng);
  }
  cuts.insert(cuts.begin(), 0);
  cuts.push_back(w);
  // Offsets: r distinct values in [0, t - w], one per run.
  std::vector<std::size_t> slots;
  {
    std::vector<std::size_t> range(t - w + 1);
    std::iota(range.begin(), range.end(), std::size_t{0});
    std::sample(range.begin(), range.end(), std::back_inserter(slots), r, rng);
  }
  std::vector<std::size_t> times;
  times.reserve(w);
  for (std::size_t i = 0; i < r; ++i) {
    const std::size_t start = slots[i] + cuts[i] + 1;
    for (std::size_t j = 0; j < cuts[i + 1] - cuts[i]; ++j) times.push_back(start + j);
  }
  return times;
}

double defective_fraction(std::size_t t, std::size_t w, std::size_t r,
                          std::size_t buffer, std::size_t samples, Rng& rng) {
  if (samples == 0) throw std::invalid_argument("defective_fraction: no samples");
  std::size_t defective = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    if (make_time_set(sample_time_set(t, w, r, rng), buffer).q > 0) ++defective;
  }
  return static_cast<double>(defective) / static_cast<double>(samples);
}

}  // namespace tracelab
