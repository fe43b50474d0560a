#ifndef XDIPOLE_OPTIMIZER_HPP
#define XDIPOLE_OPTIMIZER_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "xdipole/geometry.hpp"

namespace xdipole {

/// Search space of the design synthesis: 8 geometry genes (four lengths,
/// four widths) plus the load reactance, all bounded as fractions of the
/// design wavelength; the element spacing is fixed at 0.15 lambda0 unless
/// search_spacing adds it as a tenth gene.
struct SearchSpace {
  double f0 = 3.5e9;
  double length_lo_lambda = 0.3, length_hi_lambda = 0.6;
  double width_lo_lambda = 0.005, width_hi_lambda = 0.05;
  double reactance_lo = -5000.0, reactance_hi = 5000.0;
  double spacing_lambda = 0.15;
  bool search_spacing = false;
  double spacing_lo_lambda = 0.05, spacing_hi_lambda = 0.30;
  int segments_per_dipole = 20;
  double reference_impedance = 50.0;

  /// Gene count: 9, or 10 with search_spacing.
  int dimension() const { return search_spacing ? 10 : 9; }

  /// Inclusive bounds of one gene, in meters (genes 0..7 and 9) or ohms
  /// (gene 8). Gene order: lx1, lx2, ly1, ly2, wx1, wx2, wy1, wy2, X_L[, d].
  std::pair<double, double> bounds(int gene) const;

  /// True when every gene lies inside its bounds.
  bool contains(const std::vector<double>& genes) const;

  /// Materializes a candidate into a design at f0.
  ArrayDesign to_design(const std::vector<double>& genes) const;
};

/// Genetic-algorithm operator settings.
struct GAConfig {
  int population = 40;
  int generations = 60;
  int tournament_size = 2;
  double crossover_prob = 0.9;
  double mutation_prob = 1.0 / 9.0;       ///< per gene
  double mutation_sigma_fraction = 0.05;  ///< of each gene's bound range
  double blend_lo = -0.25, blend_hi = 1.25;
  int elite_count = 1;
  std::uint64_t rng_seed = 1;

  void validate() const;  ///< throws std::invalid_argument
};

struct GenerationBest {
  int generation = 0;
  double fitness_db = 0.0;
  std::vector<double> genes;
};

/// Full trace of one GA run.
struct GARun {
  std::vector<GenerationBest> best_per_generation;  ///< generation 0 = initial pop
  std::vector<double> final_best_genes;
  double final_best_fitness_db = 0.0;
  long evaluations = 0;
  std::uint64_t seed = 0;
};

/// Fitness of one candidate: boresight LHCP realized gain in dB at f0,
/// through the same pipeline as `analyze`. Solver failures are penalized
/// with -100 dB; out-of-bounds candidates throw std::invalid_argument.
double evaluate_candidate(const std::vector<double>& genes,
                          const SearchSpace& space);

/// Fitness floor assigned to candidates whose solve fails.
inline constexpr double kFailedFitnessDb = -100.0;

/// Runs the real-coded GA: uniform random init, binary tournament
/// selection, per-gene blend crossover, Gaussian mutation, single-elite
/// carryover. Deterministic for a fixed (space, config, seed).
GARun run_ga(const SearchSpace& space, const GAConfig& config);

}  // namespace xdipole

#endif  // XDIPOLE_OPTIMIZER_HPP
