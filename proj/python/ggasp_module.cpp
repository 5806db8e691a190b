#include <pybind11/pybind11.h>

#include "ggasp/bench.hpp"
#include "ggasp/io.hpp"
#include "ggasp/oracle.hpp"
#include "ggasp/reductions.hpp"
#include "ggasp/solve.hpp"
#include "ggasp/stability.hpp"

namespace py = pybind11;

namespace {

using ggasp::Json;

py::object to_py(const Json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

Json from_py(py::handle obj) {
    if (py::isinstance<py::str>(obj)) {
        const Json j = Json::parse(obj.cast<std::string>(), nullptr, false);
        if (j.is_discarded()) throw ggasp::ValidationError("malformed JSON string");
        return j;
    }
    const std::string dumped =
        py::module_::import("json").attr("dumps")(obj).cast<std::string>();
    return Json::parse(dumped);
}

ggasp::Concept concept_of(const std::string& name) {
    if (name == "nash") return ggasp::Concept::Nash;
    if (name == "core") return ggasp::Concept::Core;
    if (name == "ir") return ggasp::Concept::IR;
    throw ggasp::ValidationError("unknown concept: " + name);
}

ggasp::OracleLimits limits_of(int max_oracle_n) {
    ggasp::OracleLimits limits = ggasp::oracle_limits_from_env();
    if (max_oracle_n > 0) limits.max_players = max_oracle_n;
    return limits;
}

py::object py_fixture(const std::string& name, int copies) {
    ggasp::Fixture which;
    if (name == "empty-core") {
        which = ggasp::Fixture::EmptyCore;
    } else if (name == "stalker") {
        which = ggasp::Fixture::Stalker;
    } else {
        throw ggasp::ValidationError("unknown fixture: " + name);
    }
    return to_py(ggasp::instance_to_json(ggasp::fixture(which, copies)));
}

py::object py_validate(py::handle instance) {
    return to_py(ggasp::instance_to_json(ggasp::instance_from_json(from_py(instance))));
}

py::object py_classify(py::handle instance) {
    const ggasp::Instance inst = ggasp::instance_from_json(from_py(instance));
    const ggasp::Topology topo = ggasp::classify_topology(inst);
    Json j{{"tag", ggasp::to_string(topo.tag)},
           {"components", topo.components},
           {"max_component_size", topo.max_component_size},
           {"component_count", topo.component_count},
           {"acyclic", topo.acyclic},
           {"connected", topo.connected}};
    return to_py(j);
}

py::object py_check(py::handle instance, py::handle assignment, const std::string& concept_name,
                    int max_oracle_n) {
    const ggasp::Instance inst = ggasp::instance_from_json(from_py(instance));
    const ggasp::Assignment pi = ggasp::assignment_from_json(from_py(assignment), inst);
    ggasp::StrongBlockLimits block;
    if (max_oracle_n > 0) block.max_players = std::max(block.max_players, max_oracle_n);
    const auto report = ggasp::analyze_assignment(inst, pi, concept_of(concept_name), block);
    return to_py(ggasp::report_to_json(report, inst, concept_of(concept_name)));
}

py::object py_solve(py::handle instance, const std::string& concept_name,
                    const std::string& method, std::uint64_t seed, bool derandomize,
                    int max_oracle_n) {
    const ggasp::Instance inst = ggasp::instance_from_json(from_py(instance));
    ggasp::SolveOptions options;
    options.method = ggasp::method_from_string(method);
    options.oracle = limits_of(max_oracle_n);
    options.star.seed = seed;
    options.star.mode = derandomize ? ggasp::StarOptions::Mode::Derandomized
                                    : ggasp::StarOptions::Mode::Randomized;
    const ggasp::SolveOutcome outcome = ggasp::solve(inst, concept_of(concept_name), options);
    return to_py(ggasp::outcome_to_json(outcome, inst));
}

long long py_count_stable(py::handle instance, const std::string& concept_name,
                          int max_oracle_n) {
    const ggasp::Instance inst = ggasp::instance_from_json(from_py(instance));
    return ggasp::oracle_count_stable(inst, concept_of(concept_name), limits_of(max_oracle_n));
}

long long py_count_feasible(py::handle instance, int max_oracle_n) {
    const ggasp::Instance inst = ggasp::instance_from_json(from_py(instance));
    long long count = 0;
    ggasp::enumerate_feasible_assignments(
        inst,
        [&](const ggasp::Assignment&) {
            ++count;
            return true;
        },
        limits_of(max_oracle_n));
    return count;
}

py::object py_generate(const std::string& family, py::handle source) {
    const ggasp::ReductionSource src = ggasp::ReductionSource::from_json(from_py(source));
    ggasp::Concept notion;
    if (family.rfind("ns-", 0) == 0) {
        notion = ggasp::Concept::Nash;
    } else if (family.rfind("core-", 0) == 0) {
        notion = ggasp::Concept::Core;
    } else {
        throw ggasp::ValidationError("unknown family: " + family);
    }
    return to_py(ggasp::instance_to_json(ggasp::generate(src, notion)));
}

py::object py_solve_source(py::handle source) {
    const ggasp::ReductionSource src = ggasp::ReductionSource::from_json(from_py(source));
    switch (src.kind) {
        case ggasp::ReductionSource::Kind::RainbowPath:
            return py::int_(ggasp::max_rainbow_matching(src.rainbow));
        case ggasp::ReductionSource::Kind::Mmm:
            return py::int_(ggasp::min_maximal_matching(src.mmm));
        case ggasp::ReductionSource::Kind::Sat3B2:
            return py::bool_(ggasp::satisfiable(src.sat));
    }
    throw ggasp::ValidationError("unknown source kind");
}

bool py_verify_reduction(py::handle source, const std::string& concept_name, int max_oracle_n) {
    const ggasp::ReductionSource src = ggasp::ReductionSource::from_json(from_py(source));
    return ggasp::verify_reduction(src, concept_of(concept_name), limits_of(max_oracle_n));
}

}  // namespace

PYBIND11_MODULE(ggasp, m) {
    m.doc() = "Stability toolkit for group activity selection on social networks";

    py::register_exception<ggasp::ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ggasp::BoundError>(m, "BoundError", PyExc_RuntimeError);
    py::register_exception<ggasp::SolverError>(m, "SolverError", PyExc_RuntimeError);

    m.def("fixture", &py_fixture, py::arg("name"), py::arg("copies") = 1,
          "Built-in example instance ('empty-core' or 'stalker') as a dict");
    m.def("validate_instance", &py_validate, py::arg("instance"),
          "Parse and validate an instance (dict or JSON string); returns the normalized dict");
    m.def("classify", &py_classify, py::arg("instance"),
          "Communication-graph topology: tag, components, sizes");
    m.def("check", &py_check, py::arg("instance"), py::arg("assignment"), py::arg("concept"),
          py::arg("max_oracle_n") = 0,
          "Stability report for an assignment under 'nash', 'core' or 'ir'");
    m.def("solve", &py_solve, py::arg("instance"), py::arg("concept"),
          py::arg("method") = "auto", py::arg("seed") = 0, py::arg("derandomize") = true,
          py::arg("max_oracle_n") = 0,
          "Find a stable assignment or report that none exists");
    m.def("count_stable", &py_count_stable, py::arg("instance"), py::arg("concept"),
          py::arg("max_oracle_n") = 0, "Number of stable assignments modulo copy symmetry");
    m.def("count_feasible", &py_count_feasible, py::arg("instance"), py::arg("max_oracle_n") = 0,
          "Number of feasible assignments modulo copy symmetry");
    m.def("generate", &py_generate, py::arg("family"), py::arg("source"),
          "Instance from a hardness construction family and source problem");
    m.def("solve_source", &py_solve_source, py::arg("source"),
          "Exhaustive source verdict: matching sizes or satisfiability");
    m.def("verify_reduction", &py_verify_reduction, py::arg("source"), py::arg("concept"),
          py::arg("max_oracle_n") = 0,
          "Source verdict matches stable-outcome existence on the generated instance");
}
