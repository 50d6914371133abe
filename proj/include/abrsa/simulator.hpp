#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "abrsa/params.hpp"

namespace abrsa {

enum class Boundary : std::uint8_t { periodic, free };

std::string_view boundary_name(Boundary b);

enum class SiteState : std::uint8_t { X, A, B };

struct LatticeConfig {
  std::size_t n_sites = 1000;
  Boundary boundary = Boundary::periodic;
  double alpha = 0.5;
  /// Strictly ascending, each in [0,1]. A site counts as attempted at sample
  /// time tau when its attempt time is <= tau.
  std::vector<double> sample_times = {1.0};
  std::uint64_t master_seed = 20240601;
  std::uint64_t replicas = 1;
  /// Free boundary only: sites excluded from each end in density estimates.
  std::size_t bulk_margin = 0;
  /// Worker threads for replica-parallel estimates; 0 picks the hardware count.
  unsigned threads = 0;

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

struct LatticeRun {
  Boundary boundary = Boundary::periodic;
  std::vector<double> sample_times;
  /// site_states[i][s]: state of site s at sample_times[i].
  std::vector<std::vector<SiteState>> site_states;
  std::vector<double> attempt_times;
  std::vector<Species> chosen_types;
};

/// Deterministic replay of the deposition rule for given attempt times and
/// types. Sites act in increasing (attempt time, site index) order; a site
/// takes its chosen type unless a neighbor already holds the opposite type.
LatticeRun replay(std::span<const double> attempt_times, std::span<const Species> chosen_types,
                  Boundary boundary, std::span<const double> sample_times);

/// One realization, a pure function of (config, replica_index). Attempt times
/// and types of replica r come from the counter stream
/// stream_key(master_seed, r): draw 2s is t_s, draw 2s+1 decides Y_s.
LatticeRun run_once(const LatticeConfig& config, std::uint64_t replica_index);

/// True iff no A site neighbors a B site at any recorded sample time.
bool check_adjacency(const LatticeRun& run);
bool check_adjacency(std::span<const SiteState> states, Boundary boundary);

struct SpeciesTriple {
  double a = 0.0;
  double b = 0.0;
  double x = 0.0;
};

struct DensityEstimate {
  double time = 0.0;
  SpeciesTriple mean;
  /// Across-replica sample standard deviation over sqrt(replicas); NaN for a
  /// single replica.
  SpeciesTriple std_error;
  std::uint64_t replicas = 0;
  /// Sites contributing to each replica's fractions (after bulk_margin).
  std::size_t n_sites = 0;
};

/// Site-averaged densities per sample time, averaged over replicas. Results
/// are bit-identical for any thread count.
std::vector<DensityEstimate> estimate_density(const LatticeConfig& config);

struct SiteOccupation {
  double time = 0.0;
  std::uint64_t replicas = 0;
  std::vector<std::uint64_t> count_a;
  std::vector<std::uint64_t> count_b;

  double p_a(std::size_t site) const;
  double p_b(std::size_t site) const;
  double std_error_a(std::size_t site) const;
};

/// Per-site occupation frequencies across replicas, per sample time.
std::vector<SiteOccupation> estimate_site_occupation(const LatticeConfig& config);

}  // namespace abrsa
