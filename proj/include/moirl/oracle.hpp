#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "moirl/momdp.hpp"
#include "moirl/planner.hpp"
#include "moirl/rng.hpp"

namespace moirl {

enum class ItemSource { PolicyReturn, TrajectoryReturn };

std::string to_string(ItemSource source);
ItemSource item_source_from_string(const std::string& name);

struct ComparisonItem {
  std::size_t id;
  VectorReturn vector_return;
  ItemSource provenance;
  bool operator==(const ComparisonItem&) const = default;
};

/// One labeled comparison. delta = return(item_i) - return(item_j); label 1 means item_i won.
struct PreferencePair {
  std::size_t item_i;
  std::size_t item_j;
  Vector delta;
  int label;
  bool operator==(const PreferencePair&) const = default;
};

struct PreferenceDataset {
  std::vector<ComparisonItem> items;  ///< items[k].id == k
  std::vector<PreferencePair> pairs;
  double eta = 1.0;
  std::optional<Vector> true_weight;
  std::uint64_t seed = 0;

  std::size_t num_objectives() const;
  /// Throws InvalidArgument on dangling ids, bad labels, inconsistent deltas or eta <= 0.
  void validate() const;
  /// Dataset restricted to the given pair indices (repeats allowed); items are shared.
  PreferenceDataset subset(std::span<const std::size_t> pair_indices) const;
  /// Builds a dataset straight from difference vectors: pair k compares item 2k
  /// (return = delta_k) against item 2k+1 (the zero vector).
  static PreferenceDataset from_differences(const std::vector<Vector>& deltas,
                                            const std::vector<int>& labels, double eta);

  bool operator==(const PreferenceDataset&) const = default;
};

/// Logistic function evaluated without overflow. sigma(x) + sigma(-x) == 1 exactly.
double logistic(double x);

/// P[i preferred over j] = sigma(eta w^T (vi - vj)).
double preference_probability(std::span<const double> w, std::span<const double> vi,
                              std::span<const double> vj, double eta);

/// Bernoulli draw with preference_probability; 1 means vi is preferred.
int sample_label(std::span<const double> w, std::span<const double> vi, std::span<const double> vj,
                 double eta, Rng& rng);
int sample_label(std::span<const double> w, std::span<const double> vi, std::span<const double> vj,
                 double eta, std::uint64_t seed);

/// Log-likelihood of the dataset's labels under direction w.
double label_log_likelihood(const PreferenceDataset& dataset, std::span<const double> w);

struct DatasetOptions {
  std::size_t num_items = 60;
  std::size_t num_pairs = 60;
  double eta = 5.0;
  ItemSource item_source = ItemSource::PolicyReturn;
  /// Rollout length for trajectory-return items.
  std::size_t rollout_horizon = 100;
  double dirichlet_concentration = 1.0;
  PlannerOptions planner{};
};

/// Items are returns of policies optimal for Dirichlet-sampled scalarizations
/// (or single rollouts of them). Pairs are distinct unordered item pairs drawn
/// without replacement, then with replacement once all are used. Labels follow
/// the Plackett-Luce model under `true_weight`, used exactly as given.
PreferenceDataset generate_dataset(const MoMdp& mdp, const DatasetOptions& options,
                                   std::span<const double> true_weight, std::uint64_t seed);

/// Text format: '#'-prefixed header block (d, eta, provenance, seed, true weight,
/// one "# item" line per item) followed by a CSV table
/// `item_i,item_j,delta_0..delta_{d-1},label`. Numbers use %.17g.
std::string dataset_to_text(const PreferenceDataset& dataset);
PreferenceDataset dataset_from_text(const std::string& text);
void save_dataset(const PreferenceDataset& dataset, const std::filesystem::path& path);
PreferenceDataset load_dataset(const std::filesystem::path& path);

}  // namespace moirl
