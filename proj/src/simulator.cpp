#include "abrsa/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "abrsa/rng.hpp"

namespace abrsa {

namespace {

constexpr std::uint64_t kReplicaBlock = 64;

// Attempt outcome memo: each site is resolved once.
enum : std::uint8_t { kUnknown = 0, kDeposited = 1, kBlocked = 2 };

struct ArraySource {
  std::span<const double> times;
  std::span<const Species> types;

  double time(std::size_t s) const { return times[s]; }
  Species type(std::size_t s) const { return types[s]; }
};

struct CounterSource {
  std::uint64_t key;
  double alpha;

  double time(std::size_t s) const { return to_unit_double(counter_draw(key, 2 * s)); }
  Species type(std::size_t s) const {
    return to_unit_double(counter_draw(key, 2 * s + 1)) < alpha ? Species::A : Species::B;
  }
};

// A site's attempt succeeds iff no neighbor that attempted earlier (ties by
// index) succeeded with the opposite type. Recursion follows time-descending
// neighbor chains only, so it terminates and its depth is the chain length.
template <typename Source>
class Resolver {
 public:
  Resolver(const Source& src, std::size_t n, Boundary boundary, std::vector<std::uint8_t>& memo)
      : src_(src), n_(n), boundary_(boundary), memo_(memo) {
    memo_.assign(n, kUnknown);
  }

  bool deposited(std::size_t s) { return resolve(s, src_.time(s), src_.type(s)); }

 private:
  bool resolve(std::size_t s, double ts, Species ys) {
    if (memo_[s] != kUnknown) return memo_[s] == kDeposited;
    bool ok = true;
    if (has_left(s)) ok = !blocks(left(s), s, ts, ys);
    if (ok && has_right(s)) ok = !blocks(right(s), s, ts, ys);
    memo_[s] = ok ? kDeposited : kBlocked;
    return ok;
  }

  bool blocks(std::size_t nb, std::size_t s, double ts, Species ys) {
    const double tn = src_.time(nb);
    const bool earlier = tn < ts || (tn == ts && nb < s);
    if (!earlier) return false;
    const Species yn = src_.type(nb);
    if (yn == ys) return false;
    return resolve(nb, tn, yn);
  }

  bool has_left(std::size_t s) const { return boundary_ == Boundary::periodic || s > 0; }
  bool has_right(std::size_t s) const { return boundary_ == Boundary::periodic || s + 1 < n_; }
  std::size_t left(std::size_t s) const { return s == 0 ? n_ - 1 : s - 1; }
  std::size_t right(std::size_t s) const { return s + 1 == n_ ? 0 : s + 1; }

  const Source& src_;
  std::size_t n_;
  Boundary boundary_;
  std::vector<std::uint8_t>& memo_;
};

// Index of the first sample time >= t, i.e. the first sample at which a site
// attempting at t counts as attempted.
std::size_t first_sample_at_or_after(std::span<const double> samples, double t) {
  return static_cast<std::size_t>(std::lower_bound(samples.begin(), samples.end(), t) -
                                  samples.begin());
}

unsigned worker_count(unsigned requested, std::uint64_t blocks) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::uint64_t>(n, std::max<std::uint64_t>(blocks, 1)));
}

template <typename Fn>
void for_each_block(std::uint64_t blocks, unsigned threads, Fn&& fn) {
  const unsigned workers = worker_count(threads, blocks);
  if (workers <= 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) fn(b);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::uint64_t b = next++; b < blocks; b = next++) fn(b);
    });
  }
  for (auto& th : pool) th.join();
}

// Running mean / sum of squared deviations; blocks merge in a fixed order.
struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double v) {
    ++count;
    const double d = v - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (v - mean);
  }

  void merge(const Moments& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(count + o.count);
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.count) / total;
    m2 += o.m2 + d * d * static_cast<double>(count) * static_cast<double>(o.count) / total;
    count += o.count;
  }

  double std_error() const {
    if (count < 2) return std::numeric_limits<double>::quiet_NaN();
    const double n = static_cast<double>(count);
    return std::sqrt(m2 / (n - 1.0) / n);
  }
};

struct SampleMoments {
  Moments a, b, x;
};

}  // namespace

std::string_view boundary_name(Boundary b) {
  return b == Boundary::periodic ? "periodic" : "free";
}

void LatticeConfig::validate() const {
  if (n_sites < 1) throw std::invalid_argument("n_sites must be >= 1");
  if (boundary == Boundary::periodic && n_sites < 3) {
    throw std::invalid_argument("a periodic lattice needs at least 3 sites");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0,1]");
  if (sample_times.empty()) throw std::invalid_argument("at least one sample time is required");
  for (std::size_t i = 0; i < sample_times.size(); ++i) {
    const double tau = sample_times[i];
    if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument("sample times must lie in [0,1]");
    if (i > 0 && !(tau > sample_times[i - 1])) {
      throw std::invalid_argument("sample times must be strictly ascending");
    }
  }
  if (replicas < 1) throw std::invalid_argument("replicas must be >= 1");
  if (bulk_margin > 0) {
    if (boundary != Boundary::free) throw std::invalid_argument("bulk_margin applies to free boundaries only");
    if (2 * bulk_margin >= n_sites) throw std::invalid_argument("bulk_margin leaves no sites");
  }
}

LatticeRun replay(std::span<const double> attempt_times, std::span<const Species> chosen_types,
                  Boundary boundary, std::span<const double> sample_times) {
  const std::size_t n = attempt_times.size();
  if (chosen_types.size() != n) throw std::invalid_argument("times and types differ in length");
  if (n == 0) throw std::invalid_argument("empty lattice");
  if (boundary == Boundary::periodic && n < 3) {
    throw std::invalid_argument("a periodic lattice needs at least 3 sites");
  }

  LatticeRun run;
  run.boundary = boundary;
  run.sample_times.assign(sample_times.begin(), sample_times.end());
  run.attempt_times.assign(attempt_times.begin(), attempt_times.end());
  run.chosen_types.assign(chosen_types.begin(), chosen_types.end());

  const ArraySource src{attempt_times, chosen_types};
  std::vector<std::uint8_t> memo;
  Resolver resolver(src, n, boundary, memo);
  std::vector<bool> deposited(n);
  for (std::size_t s = 0; s < n; ++s) deposited[s] = resolver.deposited(s);

  run.site_states.assign(sample_times.size(), std::vector<SiteState>(n, SiteState::X));
  for (std::size_t i = 0; i < sample_times.size(); ++i) {
    for (std::size_t s = 0; s < n; ++s) {
      if (deposited[s] && attempt_times[s] <= sample_times[i]) {
        run.site_states[i][s] = chosen_types[s] == Species::A ? SiteState::A : SiteState::B;
      }
    }
  }
  return run;
}

LatticeRun run_once(const LatticeConfig& config, std::uint64_t replica_index) {
  config.validate();
  const CounterSource src{stream_key(config.master_seed, replica_index), config.alpha};
  std::vector<double> times(config.n_sites);
  std::vector<Species> types(config.n_sites);
  for (std::size_t s = 0; s < config.n_sites; ++s) {
    times[s] = src.time(s);
    types[s] = src.type(s);
  }
  return replay(times, types, config.boundary, config.sample_times);
}

bool check_adjacency(std::span<const SiteState> states, Boundary boundary) {
  const std::size_t n = states.size();
  auto clash = [](SiteState p, SiteState q) {
    return (p == SiteState::A && q == SiteState::B) || (p == SiteState::B && q == SiteState::A);
  };
  for (std::size_t s = 0; s + 1 < n; ++s) {
    if (clash(states[s], states[s + 1])) return false;
  }
  if (boundary == Boundary::periodic && n >= 2 && clash(states[n - 1], states[0])) return false;
  return true;
}

bool check_adjacency(const LatticeRun& run) {
  return std::all_of(run.site_states.begin(), run.site_states.end(),
                     [&](const auto& states) { return check_adjacency(states, run.boundary); });
}

std::vector<DensityEstimate> estimate_density(const LatticeConfig& config) {
  config.validate();
  const std::size_t n = config.n_sites;
  const std::size_t lo = config.bulk_margin;
  const std::size_t hi = n - config.bulk_margin;
  const std::size_t counted = hi - lo;
  const std::size_t samples = config.sample_times.size();
  const std::uint64_t blocks = (config.replicas + kReplicaBlock - 1) / kReplicaBlock;

  std::vector<std::vector<SampleMoments>> per_block(blocks, std::vector<SampleMoments>(samples));
  for_each_block(blocks, config.threads, [&](std::uint64_t block) {
    std::vector<std::uint8_t> memo;
    std::vector<std::uint64_t> new_a(samples), new_b(samples);
    const std::uint64_t first = block * kReplicaBlock;
    const std::uint64_t last = std::min(config.replicas, first + kReplicaBlock);
    for (std::uint64_t r = first; r < last; ++r) {
      const CounterSource src{stream_key(config.master_seed, r), config.alpha};
      Resolver resolver(src, n, config.boundary, memo);
      std::fill(new_a.begin(), new_a.end(), 0);
      std::fill(new_b.begin(), new_b.end(), 0);
      for (std::size_t s = lo; s < hi; ++s) {
        const std::size_t i = first_sample_at_or_after(config.sample_times, src.time(s));
        if (i == samples || !resolver.deposited(s)) continue;
        (src.type(s) == Species::A ? new_a : new_b)[i] += 1;
      }
      std::uint64_t occ_a = 0, occ_b = 0;
      for (std::size_t i = 0; i < samples; ++i) {
        occ_a += new_a[i];
        occ_b += new_b[i];
        const double fa = static_cast<double>(occ_a) / static_cast<double>(counted);
        const double fb = static_cast<double>(occ_b) / static_cast<double>(counted);
        const double fx =
            static_cast<double>(counted - occ_a - occ_b) / static_cast<double>(counted);
        auto& m = per_block[block][i];
        m.a.add(fa);
        m.b.add(fb);
        m.x.add(fx);
      }
    }
  });

  std::vector<DensityEstimate> out(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    SampleMoments total;
    for (const auto& block : per_block) {
      total.a.merge(block[i].a);
      total.b.merge(block[i].b);
      total.x.merge(block[i].x);
    }
    out[i].time = config.sample_times[i];
    out[i].mean = {total.a.mean, total.b.mean, total.x.mean};
    out[i].std_error = {total.a.std_error(), total.b.std_error(), total.x.std_error()};
    out[i].replicas = config.replicas;
    out[i].n_sites = counted;
  }
  return out;
}

double SiteOccupation::p_a(std::size_t site) const {
  return static_cast<double>(count_a.at(site)) / static_cast<double>(replicas);
}

double SiteOccupation::p_b(std::size_t site) const {
  return static_cast<double>(count_b.at(site)) / static_cast<double>(replicas);
}

double SiteOccupation::std_error_a(std::size_t site) const {
  const double p = p_a(site);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(replicas));
}

std::vector<SiteOccupation> estimate_site_occupation(const LatticeConfig& config) {
  config.validate();
  const std::size_t n = config.n_sites;
  const std::size_t samples = config.sample_times.size();
  const std::uint64_t blocks = (config.replicas + kReplicaBlock - 1) / kReplicaBlock;

  // Integer counts: merge order does not affect the result.
  std::vector<std::uint64_t> total_a(samples * n, 0), total_b(samples * n, 0);
  std::mutex merge_mutex;
  for_each_block(blocks, config.threads, [&](std::uint64_t block) {
    std::vector<std::uint64_t> ca(samples * n, 0), cb(samples * n, 0);
    std::vector<std::uint8_t> memo;
    const std::uint64_t first = block * kReplicaBlock;
    const std::uint64_t last = std::min(config.replicas, first + kReplicaBlock);
    for (std::uint64_t r = first; r < last; ++r) {
      const CounterSource src{stream_key(config.master_seed, r), config.alpha};
      Resolver resolver(src, n, config.boundary, memo);
      for (std::size_t s = 0; s < n; ++s) {
        const std::size_t i0 = first_sample_at_or_after(config.sample_times, src.time(s));
        if (i0 == samples || !resolver.deposited(s)) continue;
        auto& c = src.type(s) == Species::A ? ca : cb;
        for (std::size_t i = i0; i < samples; ++i) ++c[i * n + s];
      }
    }
    std::lock_guard lock(merge_mutex);
    for (std::size_t i = 0; i < samples * n; ++i) {
      total_a[i] += ca[i];
      total_b[i] += cb[i];
    }
  });

  std::vector<SiteOccupation> out(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    out[i].time = config.sample_times[i];
    out[i].replicas = config.replicas;
    out[i].count_a.assign(total_a.begin() + i * n, total_a.begin() + (i + 1) * n);
    out[i].count_b.assign(total_b.begin() + i * n, total_b.begin() + (i + 1) * n);
  }
  return out;
}

}  // namespace abrsa
