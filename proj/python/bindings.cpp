#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mapf/bench.hpp"
#include "mapf/cbs.hpp"
#include "mapf/io.hpp"
#include "mapf/oracle.hpp"
#include "mapf/pbs.hpp"

namespace py = pybind11;
using namespace mapf;

namespace {

Semantics semantics_of(const std::string& name) {
  if (name == "stay") return Semantics::StayAtTarget;
  if (name == "disappear") return Semantics::DisappearAtTarget;
  throw Error("semantics must be 'stay' or 'disappear'");
}

std::vector<std::vector<std::string>> labelled_plan(const Instance& inst, const Plan& plan) {
  std::vector<std::vector<std::string>> out;
  for (const Path& p : plan) {
    std::vector<std::string> labels;
    for (VertexId v : p.vertices) labels.push_back(inst.label(v));
    out.push_back(std::move(labels));
  }
  return out;
}

Plan plan_from_labels(const Instance& inst,
                      const std::vector<std::vector<std::string>>& labelled) {
  std::map<std::string, VertexId> by_label;
  for (int v = 0; v < inst.graph.vertex_count(); ++v) by_label[inst.label(v)] = v;
  Plan plan;
  for (const auto& labels : labelled) {
    Path p;
    for (const auto& label : labels) {
      auto it = by_label.find(label);
      if (it == by_label.end()) throw Error("unknown vertex label: " + label);
      p.vertices.push_back(it->second);
    }
    plan.push_back(std::move(p));
  }
  return plan;
}

py::dict outcome_dict(const Instance& inst, const SolveOutcome& out) {
  py::dict d;
  d["result"] = result_name(out.result);
  py::dict stats;
  stats["runtime_s"] = out.stats.runtime_seconds;
  stats["hl_expansions"] = out.stats.high_level_expansions;
  stats["ll_expansions"] = out.stats.low_level_expansions;
  d["stats"] = stats;
  if (out.result == SolveResult::Solved) {
    d["flowtime"] = flowtime(*out.plan);
    d["makespan"] = makespan(*out.plan);
    d["paths"] = labelled_plan(inst, *out.plan);
    std::vector<std::pair<int, int>> pairs;
    if (out.final_ordering)
      for (int i = 0; i < inst.num_agents(); ++i)
        for (int j = 0; j < inst.num_agents(); ++j)
          if (out.final_ordering->precedes(i, j)) pairs.push_back({i, j});
    d["ordering"] = pairs;
  } else {
    d["flowtime"] = py::none();
    d["makespan"] = py::none();
    d["paths"] = py::none();
    d["ordering"] = py::none();
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_mapf, mod) {
  mod.doc() = "Multi-agent path finding: priority-aware tree searches and baselines";

  py::register_exception<Error>(mod, "MapfError");

  py::class_<Instance>(mod, "Instance")
      .def_property_readonly("num_agents", &Instance::num_agents)
      .def_property_readonly("num_vertices",
                             [](const Instance& inst) { return inst.graph.vertex_count(); })
      .def_property_readonly("semantics",
                             [](const Instance& inst) { return semantics_name(inst.semantics); })
      .def_property_readonly("agents",
                             [](const Instance& inst) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const Agent& a : inst.agents)
                                 out.push_back({inst.label(a.start), inst.label(a.target)});
                               return out;
                             })
      .def("__repr__", [](const Instance& inst) {
        return "<Instance " + std::to_string(inst.num_agents()) + " agents on " +
               std::to_string(inst.graph.vertex_count()) + " vertices, " +
               semantics_name(inst.semantics) + ">";
      });

  mod.def(
      "parse_fixture", [](const std::string& text) { return parse_graph_fixture(text); },
      py::arg("text"), "Parse an explicit-graph fixture (v/e/a/semantics lines).");
  mod.def(
      "serialize_fixture", [](const Instance& inst) { return serialize_graph_fixture(inst); },
      py::arg("instance"));
  mod.def(
      "parse_instance",
      [](const std::string& map_text, const std::string& scen_text, int m,
         const std::string& semantics) {
        GridMap grid = parse_map(map_text);
        return parse_scen(scen_text, grid, m, semantics_of(semantics));
      },
      py::arg("map_text"), py::arg("scen_text"), py::arg("agents"),
      py::arg("semantics") = "stay", "Parse movingai map/scen text into an instance.");
  mod.def(
      "generate",
      [](int width, int height, double obstacle_pct, int m, uint64_t seed,
         const std::string& semantics, bool well_formed) {
        return generate_random_instance_with_grid(width, height, obstacle_pct, m, seed,
                                                  semantics_of(semantics), well_formed)
            .instance;
      },
      py::arg("width"), py::arg("height"), py::arg("obstacle_pct"), py::arg("agents"),
      py::arg("seed"), py::arg("semantics") = "stay", py::arg("well_formed") = false,
      "Seeded random grid instance; obstacle_pct in [0, 1).");

  mod.def(
      "solve",
      [](const Instance& inst, const std::string& algo, double timeout, uint64_t seed,
         int rnd_runs, std::optional<std::vector<int>> order) {
        py::gil_scoped_release release;
        SolveOutcome out =
            run_algorithm(algo, inst, timeout, seed, rnd_runs, order ? &*order : nullptr);
        py::gil_scoped_acquire acquire;
        return outcome_dict(inst, out);
      },
      py::arg("instance"), py::arg("algo") = "pbs", py::arg("timeout") = 60.0,
      py::arg("seed") = 1, py::arg("rnd_runs") = 10, py::arg("order") = py::none(),
      "Run one of: cbs, cbswp, pbs, fix, lh, sh, rnd. `order` is a 0-based\n"
      "permutation (highest priority first) for fix.");

  mod.def(
      "validate",
      [](const Instance& inst, const std::vector<std::vector<std::string>>& paths) {
        std::vector<std::string> out;
        for (const Violation& v : validate_solution(inst, plan_from_labels(inst, paths)))
          out.push_back(v.message);
        return out;
      },
      py::arg("instance"), py::arg("paths"),
      "Violation messages for a labelled plan; empty means valid.");

  mod.def(
      "joint_optimal",
      [](const Instance& inst) -> py::object {
        auto plan = joint_optimal(inst);
        if (!plan) return py::none();
        return py::cast(labelled_plan(inst, *plan));
      },
      py::arg("instance"),
      "Exhaustive flowtime-optimal plan for tiny instances, or None.");

  mod.def("wellformed", &wellformed_check, py::arg("instance"));

  mod.def(
      "enumerate_orderings",
      [](const Instance& inst, int max_m) {
        std::vector<py::dict> out;
        for (const auto& row : enumerate_total_orderings(inst, max_m)) {
          py::dict d;
          d["order"] = row.order;
          d["solved"] = row.solved;
          d["flowtime"] = row.solved ? py::cast(row.flowtime) : py::none();
          out.push_back(std::move(d));
        }
        return out;
      },
      py::arg("instance"), py::arg("max_m") = 5,
      "Fixed-order planning outcome for every total priority order.");
}
