#pragma once

#include <filesystem>
#include <string>

#include "moirl/momdp.hpp"

namespace moirl {

/// JSON document for an MDP:
///
///   { "format": "moirl-mdp", "version": 1,
///     "num_states": S, "num_actions": A, "num_objectives": d, "discount": g,
///     "start_distribution": [S],
///     "transition": [S][A][S],   // P(s' | s, a)
///     "reward":     [S][A][d] }
///
/// Numbers are written in shortest round-trip form, so save/load is lossless.
std::string mdp_to_json(const MoMdp& mdp);
MoMdp mdp_from_json(const std::string& text);

void save_mdp(const MoMdp& mdp, const std::filesystem::path& path);
MoMdp load_mdp(const std::filesystem::path& path);

}  // namespace moirl
