#include "moirl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "moirl/text_io.hpp"

namespace moirl {

std::string to_string(ItemSource source) {
  return source == ItemSource::PolicyReturn ? "policy-return" : "trajectory-return";
}

ItemSource item_source_from_string(const std::string& name) {
  if (name == "policy-return") return ItemSource::PolicyReturn;
  if (name == "trajectory-return") return ItemSource::TrajectoryReturn;
  throw InvalidArgument("unknown item source '" + name + "'");
}

std::size_t PreferenceDataset::num_objectives() const {
  if (!items.empty()) return items.front().vector_return.size();
  if (!pairs.empty()) return pairs.front().delta.size();
  return 0;
}

void PreferenceDataset::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw InvalidArgument("eta must be positive");
  const std::size_t d = num_objectives();
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (items[k].id != k) throw InvalidArgument("item ids must equal their position");
    if (items[k].vector_return.size() != d || !all_finite(items[k].vector_return.values))
      throw InvalidArgument("item return must be finite with length d");
  }
  for (const auto& p : pairs) {
    if (p.item_i >= items.size() || p.item_j >= items.size()) throw InvalidArgument("pair references unknown item");
    if (p.label != 0 && p.label != 1) throw InvalidArgument("labels must be 0 or 1");
    const Vector expected = subtract(items[p.item_i].vector_return.values, items[p.item_j].vector_return.values);
    if (p.delta.size() != d) throw InvalidArgument("pair delta has wrong length");
    for (std::size_t k = 0; k < d; ++k)
      if (std::abs(p.delta[k] - expected[k]) > 1e-9) throw InvalidArgument("pair delta disagrees with item returns");
  }
  if (true_weight && true_weight->size() != d) throw InvalidArgument("true weight has wrong length");
}

PreferenceDataset PreferenceDataset::subset(std::span<const std::size_t> pair_indices) const {
  PreferenceDataset out;
  out.items = items;
  out.eta = eta;
  out.true_weight = true_weight;
  out.seed = seed;
  out.pairs.reserve(pair_indices.size());
  for (std::size_t idx : pair_indices) out.pairs.push_back(pairs.at(idx));
  return out;
}

PreferenceDataset PreferenceDataset::from_differences(const std::vector<Vector>& deltas,
                                                      const std::vector<int>& labels, double eta) {
  if (deltas.size() != labels.size()) throw InvalidArgument("one label per difference vector");
  PreferenceDataset out;
  out.eta = eta;
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    out.items.push_back({2 * k, VectorReturn{deltas[k]}, ItemSource::PolicyReturn});
    out.items.push_back({2 * k + 1, VectorReturn{Vector(deltas[k].size(), 0.0)}, ItemSource::PolicyReturn});
    out.pairs.push_back({2 * k, 2 * k + 1, deltas[k], labels[k]});
  }
  out.validate();
  return out;
}

double logistic(double x) {
  // The smaller probability is computed directly; the larger one as its
  // complement, which makes sigma(x) + sigma(-x) round to exactly 1.
  const double e = std::exp(-std::abs(x));
  const double small = e / (1.0 + e);
  return x >= 0.0 ? 1.0 - small : small;
}

double preference_probability(std::span<const double> w, std::span<const double> vi,
                              std::span<const double> vj, double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw InvalidArgument("eta must be positive and finite");
  if (!all_finite(w) || !all_finite(vi) || !all_finite(vj)) throw InvalidArgument("non-finite preference input");
  return logistic(eta * dot(w, subtract(vi, vj)));
}

int sample_label(std::span<const double> w, std::span<const double> vi, std::span<const double> vj,
                 double eta, Rng& rng) {
  const double p = preference_probability(w, vi, vj, eta);
  return uniform01(rng) < p ? 1 : 0;
}

int sample_label(std::span<const double> w, std::span<const double> vi, std::span<const double> vj,
                 double eta, std::uint64_t seed) {
  Rng rng(seed);
  return sample_label(w, vi, vj, eta, rng);
}

double label_log_likelihood(const PreferenceDataset& dataset, std::span<const double> w) {
  double ll = 0.0;
  for (const auto& p : dataset.pairs) {
    const double margin = dataset.eta * dot(w, p.delta) * (p.label == 1 ? 1.0 : -1.0);
    // log sigma(m) = -log(1 + exp(-m))
    ll -= margin > 0 ? std::log1p(std::exp(-margin)) : -margin + std::log1p(std::exp(margin));
  }
  return ll;
}

namespace {

// Unordered pair (i < j) for linear index k in row-major upper-triangle order.
std::pair<std::size_t, std::size_t> unrank_pair(std::size_t k, std::size_t n) {
  std::size_t i = 0;
  std::size_t row = n - 1;
  while (k >= row) {
    k -= row;
    ++i;
    --row;
  }
  return {i, i + 1 + k};
}

}  // namespace

PreferenceDataset generate_dataset(const MoMdp& mdp, const DatasetOptions& options,
                                   std::span<const double> true_weight, std::uint64_t seed) {
  const std::size_t d = mdp.num_objectives();
  if (options.num_items < 2) throw InvalidArgument("need at least two comparison items");
  if (options.num_pairs == 0) throw InvalidArgument("num_pairs must be positive");
  if (!(options.eta > 0.0)) throw InvalidArgument("eta must be positive");
  if (true_weight.size() != d || !all_finite(true_weight)) throw InvalidArgument("true weight must be finite with length d");
  for (double x : true_weight)
    if (x < 0.0) throw InvalidArgument("true weight must lie in the non-negative orthant");

  Rng rng(seed);
  PreferenceDataset data;
  data.eta = options.eta;
  data.seed = seed;
  data.true_weight = Vector(true_weight.begin(), true_weight.end());
  data.items.reserve(options.num_items);
  for (std::size_t k = 0; k < options.num_items; ++k) {
    const Vector w = sample_dirichlet(rng, d, options.dirichlet_concentration);
    const ScalarizedSolution sol = solve_scalarized(mdp, w, options.planner);
    VectorReturn ret = options.item_source == ItemSource::PolicyReturn
                           ? sol.vector_return
                           : trajectory_return(mdp, rollout(mdp, sol.policy, options.rollout_horizon, rng));
    data.items.push_back({k, std::move(ret), options.item_source});
  }

  const std::size_t n = options.num_items;
  const std::size_t distinct = n * (n - 1) / 2;
  std::vector<std::size_t> order(distinct);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t without_replacement = std::min(options.num_pairs, distinct);
  for (std::size_t k = 0; k < without_replacement; ++k) {
    const std::size_t pick = k + uniform_index(rng, distinct - k);
    std::swap(order[k], order[pick]);
  }
  data.pairs.reserve(options.num_pairs);
  for (std::size_t k = 0; k < options.num_pairs; ++k) {
    const std::size_t linear = k < distinct ? order[k] : uniform_index(rng, distinct);
    const auto [i, j] = unrank_pair(linear, n);
    const auto& vi = data.items[i].vector_return.values;
    const auto& vj = data.items[j].vector_return.values;
    const int label = sample_label(true_weight, vi, vj, options.eta, rng);
    data.pairs.push_back({i, j, subtract(vi, vj), label});
  }
  return data;
}

std::string dataset_to_text(const PreferenceDataset& dataset) {
  const std::size_t d = dataset.num_objectives();
  std::ostringstream out;
  out << "# moirl-dataset v1\n";
  out << "# num_objectives: " << d << '\n';
  out << "# eta: " << text::format_double(dataset.eta) << '\n';
  out << "# provenance: "
      << (dataset.items.empty() ? std::string("policy-return") : to_string(dataset.items.front().provenance)) << '\n';
  out << "# seed: " << dataset.seed << '\n';
  out << "# true_weight: " << (dataset.true_weight ? text::join(*dataset.true_weight) : std::string("none")) << '\n';
  out << "# num_items: " << dataset.items.size() << '\n';
  for (const auto& item : dataset.items)
    out << "# item: " << item.id << ',' << to_string(item.provenance) << ','
        << text::join(item.vector_return.values) << '\n';
  out << "item_i,item_j";
  for (std::size_t k = 0; k < d; ++k) out << ",delta_" << k;
  out << ",label\n";
  for (const auto& p : dataset.pairs)
    out << p.item_i << ',' << p.item_j << ',' << text::join(p.delta) << ',' << p.label << '\n';
  return out.str();
}

PreferenceDataset dataset_from_text(const std::string& contents) {
  PreferenceDataset data;
  std::istringstream in(contents);
  std::string line;
  std::size_t d = 0;
  bool header_row_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      const std::string key = text::trim(line.substr(1, colon - 1));
      const std::string value = text::trim(line.substr(colon + 1));
      if (key == "num_objectives") {
        d = text::parse_unsigned(value);
      } else if (key == "eta") {
        data.eta = text::parse_double(value);
      } else if (key == "seed") {
        data.seed = text::parse_unsigned(value);
      } else if (key == "true_weight") {
        if (value != "none") {
          Vector w;
          for (const auto& f : text::split(value)) w.push_back(text::parse_double(f));
          data.true_weight = std::move(w);
        }
      } else if (key == "item") {
        const auto fields = text::split(value);
        if (fields.size() != d + 2) throw FormatError("item line has wrong field count");
        ComparisonItem item{text::parse_unsigned(fields[0]), VectorReturn{Vector(d)},
                            item_source_from_string(text::trim(fields[1]))};
        for (std::size_t k = 0; k < d; ++k) item.vector_return.values[k] = text::parse_double(fields[2 + k]);
        data.items.push_back(std::move(item));
      }
      continue;
    }
    if (!header_row_seen) {
      header_row_seen = true;
      if (text::split(line).size() != d + 3) throw FormatError("pair header has wrong column count");
      continue;
    }
    const auto fields = text::split(line);
    if (fields.size() != d + 3) throw FormatError("pair row has wrong field count");
    PreferencePair p{text::parse_unsigned(fields[0]), text::parse_unsigned(fields[1]), Vector(d), 0};
    for (std::size_t k = 0; k < d; ++k) p.delta[k] = text::parse_double(fields[2 + k]);
    p.label = static_cast<int>(text::parse_unsigned(fields[d + 2]));
    data.pairs.push_back(std::move(p));
  }
  if (d == 0) throw FormatError("dataset header lacks num_objectives");
  try {
    data.validate();
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("invalid dataset: ") + e.what());
  }
  return data;
}

void save_dataset(const PreferenceDataset& dataset, const std::filesystem::path& path) {
  text::write_file(path, dataset_to_text(dataset));
}

PreferenceDataset load_dataset(const std::filesystem::path& path) {
  return dataset_from_text(text::read_file(path));
}

}  // namespace moirl
