#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "moirl/cone.hpp"
#include "moirl/config_io.hpp"
#include "moirl/envs.hpp"
#include "moirl/errors.hpp"
#include "moirl/harness.hpp"
#include "moirl/mdp_io.hpp"
#include "moirl/oracle.hpp"
#include "moirl/pareto.hpp"
#include "moirl/planner.hpp"
#include "moirl/report.hpp"

namespace py = pybind11;
using namespace moirl;

namespace {

py::object to_python(const Json& json) { return py::module_::import("json").attr("loads")(json.dump()); }

Json from_python(const py::object& obj) {
  return Json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

MoMdp make_env(const std::string& name, const EnvParams& params) {
  return build_env(EnvSpec{env_name_from_string(name), params});
}

py::dict solution_dict(const ScalarizedSolution& sol) {
  py::dict out;
  out["weight"] = sol.weight;
  out["policy"] = sol.policy.actions();
  out["scalar_value"] = sol.scalar_value;
  out["vector_return"] = sol.vector_return.values;
  out["sweeps"] = sol.sweeps;
  return out;
}

py::dict cone_dict(const ConeEstimate& cone) {
  py::dict out;
  out["directions"] = cone.directions;
  out["hull_rays"] = cone.hull_rays;
  out["mean_direction"] = cone.mean_direction();
  out["degenerate_fits"] = cone.degenerate_fits;
  return out;
}

py::dict run_dict(const RunResult& run, const ExperimentConfig& config) {
  py::dict out;
  out["summary"] = to_python(report::run_summary(run, config_to_json(config)));
  py::list seeds;
  for (const auto& s : run.seeds) {
    py::dict row;
    row["seed"] = s.seed;
    row["ok"] = s.ok;
    row["error"] = s.error;
    row["mean_weight"] = s.mean_weight;
    row["front"] = s.front.values();
    row["sampled_weights"] = s.sampled_weights;
    py::dict metrics;
    for (const auto& name : metric_names()) metrics[py::str(name)] = metric_value(s.metrics, name);
    row["metrics"] = metrics;
    seeds.append(row);
  }
  out["seeds"] = seeds;
  return out;
}

}  // namespace

PYBIND11_MODULE(_moirl, m) {
  m.doc() = "Preference-based multi-objective inverse RL";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InvalidArgument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const IoError& e) {
      PyErr_SetString(PyExc_OSError, e.what());
    } catch (const Error& e) {
      PyErr_SetString(PyExc_RuntimeError, e.what());
    }
  });

  py::class_<MoMdp>(m, "MoMdp")
      .def_property_readonly("num_states", &MoMdp::num_states)
      .def_property_readonly("num_actions", &MoMdp::num_actions)
      .def_property_readonly("num_objectives", &MoMdp::num_objectives)
      .def_property_readonly("discount", &MoMdp::discount)
      .def_property_readonly("start_distribution",
                             [](const MoMdp& mdp) {
                               const auto s = mdp.start_distribution();
                               return std::vector<double>(s.begin(), s.end());
                             })
      .def("to_json", [](const MoMdp& mdp) { return mdp_to_json(mdp); })
      .def("save", [](const MoMdp& mdp, const std::filesystem::path& path) { save_mdp(mdp, path); })
      .def("__eq__", [](const MoMdp& a, const MoMdp& b) { return a == b; });

  py::class_<PreferenceDataset>(m, "PreferenceDataset")
      .def_readonly("eta", &PreferenceDataset::eta)
      .def_readonly("seed", &PreferenceDataset::seed)
      .def_readonly("true_weight", &PreferenceDataset::true_weight)
      .def_property_readonly("num_objectives", &PreferenceDataset::num_objectives)
      .def("__len__", [](const PreferenceDataset& d) { return d.pairs.size(); })
      .def_property_readonly("deltas",
                             [](const PreferenceDataset& d) {
                               std::vector<Vector> out;
                               for (const auto& p : d.pairs) out.push_back(p.delta);
                               return out;
                             })
      .def_property_readonly("labels",
                             [](const PreferenceDataset& d) {
                               std::vector<int> out;
                               for (const auto& p : d.pairs) out.push_back(p.label);
                               return out;
                             })
      .def_static("from_differences", &PreferenceDataset::from_differences, py::arg("deltas"), py::arg("labels"),
                  py::arg("eta"))
      .def("to_text", [](const PreferenceDataset& d) { return dataset_to_text(d); })
      .def_static("from_text", &dataset_from_text)
      .def("__eq__", [](const PreferenceDataset& a, const PreferenceDataset& b) { return a == b; });

  m.def("build_env", &make_env, py::arg("name"), py::arg("params") = EnvParams{},
        "thermostat2d, thermostat3d or gridworld3d with optional parameter overrides");
  m.def("default_env_params", [](const std::string& name) { return default_env_params(env_name_from_string(name)); });
  m.def("load_mdp", &load_mdp);
  m.def("mdp_from_json", &mdp_from_json);

  m.def(
      "evaluate_policy",
      [](const MoMdp& mdp, const std::vector<std::size_t>& actions) {
        return evaluate_policy(mdp, Policy::deterministic(actions, mdp.num_actions())).values;
      },
      py::arg("mdp"), py::arg("actions"));
  m.def(
      "solve_scalarized",
      [](const MoMdp& mdp, const Vector& weight, double tolerance) {
        return solution_dict(solve_scalarized(mdp, weight, {tolerance, 0}));
      },
      py::arg("mdp"), py::arg("weight"), py::arg("tolerance") = 1e-8);

  m.def(
      "preference_probability",
      [](const Vector& w, const Vector& a, const Vector& b, double eta) {
        return preference_probability(w, a, b, eta);
      },
      py::arg("weight"), py::arg("a"), py::arg("b"), py::arg("eta"));
  m.def(
      "generate_dataset",
      [](const MoMdp& mdp, const Vector& true_weight, double eta, std::size_t num_items, std::size_t num_pairs,
         std::uint64_t seed) {
        DatasetOptions options;
        options.eta = eta;
        options.num_items = num_items;
        options.num_pairs = num_pairs;
        return generate_dataset(mdp, options, true_weight, seed);
      },
      py::arg("mdp"), py::arg("true_weight"), py::arg("eta") = 5.0, py::arg("num_items") = 60,
      py::arg("num_pairs") = 60, py::arg("seed") = 0);

  m.def(
      "logistic_loss", [](const Vector& w, const PreferenceDataset& d) { return logistic_loss(w, d); },
      py::arg("weight"), py::arg("dataset"));
  m.def(
      "logistic_loss_gradient",
      [](const Vector& w, const PreferenceDataset& d) { return logistic_loss_gradient(w, d); }, py::arg("weight"),
      py::arg("dataset"));
  m.def(
      "fit_direction",
      [](const PreferenceDataset& d, std::uint64_t seed) {
        const auto fit = fit_direction(d, {}, seed);
        py::dict out;
        out["direction"] = fit.direction;
        out["final_loss"] = fit.report.final_loss;
        out["iterations"] = fit.report.iterations;
        out["converged"] = fit.report.converged;
        out["on_boundary"] = fit.report.on_boundary;
        return out;
      },
      py::arg("dataset"), py::arg("seed") = 0);
  m.def(
      "estimate_cone",
      [](const PreferenceDataset& d, std::size_t num_bootstrap, double subset_fraction, std::uint64_t seed) {
        ConeOptions options;
        options.num_bootstrap = num_bootstrap;
        options.subset_fraction = subset_fraction;
        return cone_dict(estimate_cone(d, options, seed));
      },
      py::arg("dataset"), py::arg("num_bootstrap") = 12, py::arg("subset_fraction") = 0.7, py::arg("seed") = 0);
  m.def(
      "angular_distance", [](const Vector& u, const Vector& v) { return angular_distance(u, v); }, py::arg("u"),
      py::arg("v"));

  m.def(
      "pareto_front",
      [](const std::vector<Vector>& points) {
        ParetoFrontEstimate front;
        for (const auto& p : points) front.insert({p});
        return front.values();
      },
      py::arg("points"), "Non-dominated subset, in insertion order");
  m.def(
      "dominates", [](const Vector& a, const Vector& b) { return dominates(a, b); }, py::arg("a"), py::arg("b"));

  m.def(
      "run_experiment",
      [](const py::object& config) {
        const auto c = config_from_json(from_python(config));
        py::gil_scoped_release release;
        const auto run = run_method(c, build_env(c.env));
        py::gil_scoped_acquire acquire;
        return run_dict(run, c);
      },
      py::arg("config"), "Runs a configuration given as a dict; returns the summary and per-seed results");
  m.def(
      "resolve_config", [](const py::object& config) { return to_python(config_to_json(config_from_json(from_python(config)))); },
      py::arg("config"));
}
