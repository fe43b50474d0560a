#include "xdipole/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "xdipole/errors.hpp"
#include "xdipole/metrics.hpp"

namespace xdipole {

std::pair<double, double> SearchSpace::bounds(int gene) const {
  const double lambda0 = wavelength(f0);
  if (gene >= 0 && gene < 4)
    return {length_lo_lambda * lambda0, length_hi_lambda * lambda0};
  if (gene < 8) return {width_lo_lambda * lambda0, width_hi_lambda * lambda0};
  if (gene == 8) return {reactance_lo, reactance_hi};
  if (gene == 9 && search_spacing)
    return {spacing_lo_lambda * lambda0, spacing_hi_lambda * lambda0};
  throw std::out_of_range("SearchSpace::bounds: bad gene index");
}

bool SearchSpace::contains(const std::vector<double>& genes) const {
  if (static_cast<int>(genes.size()) != dimension()) return false;
  for (int g = 0; g < dimension(); ++g) {
    const auto [lo, hi] = bounds(g);
    if (!(genes[static_cast<std::size_t>(g)] >= lo &&
          genes[static_cast<std::size_t>(g)] <= hi))
      return false;
  }
  return true;
}

ArrayDesign SearchSpace::to_design(const std::vector<double>& genes) const {
  ArrayDesign d;
  d.lx1 = genes[0];
  d.lx2 = genes[1];
  d.ly1 = genes[2];
  d.ly2 = genes[3];
  d.wx1 = genes[4];
  d.wx2 = genes[5];
  d.wy1 = genes[6];
  d.wy2 = genes[7];
  d.load_reactance = genes[8];
  d.spacing_d =
      search_spacing ? genes[9] : spacing_lambda * wavelength(f0);
  d.frequency = f0;
  return d;
}

void GAConfig::validate() const {
  if (population < 4 || population % 2 != 0)
    throw std::invalid_argument("GAConfig: population must be even and >= 4");
  if (generations < 1)
    throw std::invalid_argument("GAConfig: generations must be >= 1");
  if (tournament_size < 1)
    throw std::invalid_argument("GAConfig: tournament_size must be >= 1");
  if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0))
    throw std::invalid_argument("GAConfig: crossover_prob out of [0,1]");
  if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0))
    throw std::invalid_argument("GAConfig: mutation_prob out of [0,1]");
  if (!(mutation_sigma_fraction > 0.0))
    throw std::invalid_argument("GAConfig: mutation_sigma_fraction must be > 0");
  if (elite_count < 0 || elite_count >= population)
    throw std::invalid_argument("GAConfig: elite_count out of range");
}

double evaluate_candidate(const std::vector<double>& genes,
                          const SearchSpace& space) {
  if (!space.contains(genes))
    throw std::invalid_argument("evaluate_candidate: candidate out of bounds");
  try {
    const Analysis analysis =
        analyze_design(space.to_design(genes), space.segments_per_dipole,
                       space.reference_impedance);
    const double fitness = analysis.report.g_lhcp_db;
    if (!std::isfinite(fitness)) return kFailedFitnessDb;
    return fitness;
  } catch (const MeshError&) {
    return kFailedFitnessDb;
  } catch (const NumericalError&) {
    return kFailedFitnessDb;
  }
}

namespace {

std::size_t best_index(const std::vector<double>& fitness) {
  return static_cast<std::size_t>(std::distance(
      fitness.begin(), std::max_element(fitness.begin(), fitness.end())));
}

}  // namespace

GARun run_ga(const SearchSpace& space, const GAConfig& config) {
  config.validate();
  const int dim = space.dimension();
  const int pop_size = config.population;

  std::mt19937_64 rng(config.rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, pop_size - 1);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<std::pair<double, double>> gene_bounds;
  gene_bounds.reserve(static_cast<std::size_t>(dim));
  for (int g = 0; g < dim; ++g) gene_bounds.push_back(space.bounds(g));
  auto clip = [&](int g, double v) {
    return std::clamp(v, gene_bounds[static_cast<std::size_t>(g)].first,
                      gene_bounds[static_cast<std::size_t>(g)].second);
  };

  GARun run;
  run.seed = config.rng_seed;

  std::vector<std::vector<double>> pop(static_cast<std::size_t>(pop_size));
  std::vector<double> fitness(static_cast<std::size_t>(pop_size));
  for (auto& candidate : pop) {
    candidate.resize(static_cast<std::size_t>(dim));
    for (int g = 0; g < dim; ++g) {
      const auto [lo, hi] = gene_bounds[static_cast<std::size_t>(g)];
      candidate[static_cast<std::size_t>(g)] = lo + (hi - lo) * unit(rng);
    }
  }
  for (std::size_t i = 0; i < pop.size(); ++i)
    fitness[i] = evaluate_candidate(pop[i], space);
  run.evaluations = pop_size;

  auto record_best = [&](int generation) {
    const std::size_t b = best_index(fitness);
    run.best_per_generation.push_back({generation, fitness[b], pop[b]});
  };
  record_best(0);

  auto tournament = [&]() {
    int winner = pick(rng);
    for (int k = 1; k < config.tournament_size; ++k) {
      const int challenger = pick(rng);
      if (fitness[static_cast<std::size_t>(challenger)] >
          fitness[static_cast<std::size_t>(winner)])
        winner = challenger;
    }
    return static_cast<std::size_t>(winner);
  };

  for (int gen = 1; gen <= config.generations; ++gen) {
    std::vector<std::vector<double>> next;
    std::vector<double> next_fitness;
    next.reserve(static_cast<std::size_t>(pop_size));
    next_fitness.reserve(static_cast<std::size_t>(pop_size));

    // Elite candidates keep their fitness; no re-evaluation.
    if (config.elite_count > 0) {
      const std::size_t b = best_index(fitness);
      next.push_back(pop[b]);
      next_fitness.push_back(fitness[b]);
    }

    while (static_cast<int>(next.size()) < pop_size) {
      const std::size_t a = tournament();
      const std::size_t b = tournament();
      std::vector<double> child(static_cast<std::size_t>(dim));
      if (unit(rng) < config.crossover_prob) {
        for (int g = 0; g < dim; ++g) {
          const double ratio =
              config.blend_lo + (config.blend_hi - config.blend_lo) * unit(rng);
          child[static_cast<std::size_t>(g)] =
              clip(g, ratio * pop[a][static_cast<std::size_t>(g)] +
                          (1.0 - ratio) * pop[b][static_cast<std::size_t>(g)]);
        }
      } else {
        child = pop[a];
      }
      for (int g = 0; g < dim; ++g) {
        if (unit(rng) < config.mutation_prob) {
          const auto [lo, hi] = gene_bounds[static_cast<std::size_t>(g)];
          const double sigma = config.mutation_sigma_fraction * (hi - lo);
          child[static_cast<std::size_t>(g)] =
              clip(g, child[static_cast<std::size_t>(g)] + sigma * gauss(rng));
        }
      }
      next_fitness.push_back(evaluate_candidate(child, space));
      next.push_back(std::move(child));
      ++run.evaluations;
    }

    pop = std::move(next);
    fitness = std::move(next_fitness);
    record_best(gen);
  }

  const std::size_t b = best_index(fitness);
  run.final_best_genes = pop[b];
  run.final_best_fitness_db = fitness[b];
  return run;
}

}  // namespace xdipole
