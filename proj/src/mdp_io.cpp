#include "moirl/mdp_io.hpp"

#include <nlohmann/json.hpp>

#include "moirl/text_io.hpp"

namespace moirl {

using nlohmann::json;

std::string mdp_to_json(const MoMdp& mdp) {
  const std::size_t S = mdp.num_states(), A = mdp.num_actions(), d = mdp.num_objectives();
  json transition = json::array(), reward = json::array();
  for (std::size_t s = 0; s < S; ++s) {
    json t_row = json::array(), r_row = json::array();
    for (std::size_t a = 0; a < A; ++a) {
      auto next = mdp.next_state_distribution(s, a);
      auto r = mdp.reward(s, a);
      t_row.push_back(std::vector<double>(next.begin(), next.end()));
      r_row.push_back(std::vector<double>(r.begin(), r.end()));
    }
    transition.push_back(std::move(t_row));
    reward.push_back(std::move(r_row));
  }
  auto start = mdp.start_distribution();
  json doc = {
      {"format", "moirl-mdp"},
      {"version", 1},
      {"num_states", S},
      {"num_actions", A},
      {"num_objectives", d},
      {"discount", mdp.discount()},
      {"start_distribution", std::vector<double>(start.begin(), start.end())},
      {"transition", std::move(transition)},
      {"reward", std::move(reward)},
  };
  return doc.dump(1);
}

MoMdp mdp_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("MDP document is not valid JSON: ") + e.what());
  }
  try {
    if (doc.value("format", std::string{}) != "moirl-mdp") throw FormatError("not a moirl-mdp document");
    const auto S = doc.at("num_states").get<std::size_t>();
    const auto A = doc.at("num_actions").get<std::size_t>();
    const auto d = doc.at("num_objectives").get<std::size_t>();
    std::vector<double> transition, reward;
    transition.reserve(S * A * S);
    reward.reserve(S * A * d);
    const auto& t = doc.at("transition");
    const auto& r = doc.at("reward");
    if (t.size() != S || r.size() != S) throw FormatError("tensor outer dimension must equal num_states");
    for (std::size_t s = 0; s < S; ++s) {
      if (t[s].size() != A || r[s].size() != A) throw FormatError("tensor row must have num_actions entries");
      for (std::size_t a = 0; a < A; ++a) {
        auto next = t[s][a].get<std::vector<double>>();
        auto rew = r[s][a].get<std::vector<double>>();
        if (next.size() != S || rew.size() != d) throw FormatError("tensor innermost dimension mismatch");
        transition.insert(transition.end(), next.begin(), next.end());
        reward.insert(reward.end(), rew.begin(), rew.end());
      }
    }
    return MoMdp(S, A, d, doc.at("discount").get<double>(), std::move(transition), std::move(reward),
                 doc.at("start_distribution").get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed MDP document: ") + e.what());
  }
}

void save_mdp(const MoMdp& mdp, const std::filesystem::path& path) {
  text::write_file(path, mdp_to_json(mdp) + "\n");
}

MoMdp load_mdp(const std::filesystem::path& path) { return mdp_from_json(text::read_file(path)); }

}  // namespace moirl
