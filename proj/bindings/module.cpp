#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "randheap/adversary.hpp"
#include "randheap/errors.hpp"
#include "randheap/experiment.hpp"
#include "randheap/fit.hpp"
#include "randheap/heap.hpp"
#include "randheap/oracle.hpp"
#include "randheap/trace.hpp"

namespace py = pybind11;
using namespace randheap;

namespace {

CutPolicy policy_from(const std::string& name) {
    auto policy = parse_cut_policy(name);
    if (!policy) throw py::value_error("unknown policy '" + name + "'");
    return *policy;
}

FitModel model_from(const std::string& name) {
    auto model = parse_fit_model(name);
    if (!model) throw py::value_error("unknown fit model '" + name + "'");
    return *model;
}

Trace trace_from_text(const std::string& text) {
    std::istringstream in(text);
    return parse_trace(in);
}

std::string trace_to_text(const Trace& trace) {
    std::ostringstream out;
    write_trace(out, trace);
    return out.str();
}

}  // namespace

PYBIND11_MODULE(_randheap, m) {
    m.doc() = "Instrumented mergeable heaps with pluggable decrease-key cut policies";

    py::register_exception<Error>(m, "HeapError");

    py::class_<Handle>(m, "Handle")
        .def(py::init<>())
        .def_readonly("id", &Handle::id)
        .def("__bool__", [](const Handle& h) { return static_cast<bool>(h); })
        .def("__eq__", [](const Handle& a, const Handle& b) { return a == b; })
        .def("__hash__", [](const Handle& h) { return h.id; })
        .def("__repr__",
             [](const Handle& h) { return "Handle(" + std::to_string(h.id) + ")"; });

    py::class_<Heap>(m, "Heap")
        .def(py::init([](const std::string& policy, std::uint64_t seed, std::uint16_t tag) {
                 return Heap(policy_from(policy), seed, tag);
             }),
             py::arg("policy"), py::arg("seed") = 0, py::arg("tag") = 0)
        .def("insert", &Heap::insert, py::arg("priority"))
        .def("find_min", &Heap::find_min)
        .def("delete_min", &Heap::delete_min)
        .def("decrease_key", &Heap::decrease_key, py::arg("handle"), py::arg("priority"))
        .def("validate",
             [](const Heap& h) {
                 std::vector<std::pair<std::string, std::string>> out;
                 for (const auto& v : h.validate()) out.emplace_back(v.kind, v.detail);
                 return out;
             })
        .def("__len__", &Heap::size)
        .def_property_readonly("ops", &Heap::ops)
        .def_property_readonly("policy", [](const Heap& h) {
            return std::string(cut_policy_name(h.policy()));
        })
        .def_static(
            "meld", [](Heap& a, Heap& b) { return Heap::meld(std::move(a), std::move(b)); },
            py::arg("a"), py::arg("b"))
        .def_static("fixed_degree_cap", &Heap::fixed_degree_cap, py::arg("n"));

    m.def(
        "gen_random",
        [](std::size_t ops, std::uint64_t seed, double p_insert, double p_delete,
           double p_decrease) {
            return trace_to_text(gen_random(ops, seed, p_insert, p_delete, p_decrease));
        },
        py::arg("ops"), py::arg("seed") = 0, py::arg("p_insert") = 0.4,
        py::arg("p_delete") = 0.3, py::arg("p_decrease") = 0.3);
    m.def(
        "gen_sqrt_n", [](std::size_t n) { return trace_to_text(gen_sqrt_n(n)); }, py::arg("n"));
    m.def(
        "gen_logsq",
        [](std::size_t s, std::size_t n_cap) { return trace_to_text(gen_logsq(s, n_cap)); },
        py::arg("s"), py::arg("n_cap") = 0);

    m.def(
        "run_trace",
        [](const std::string& text, const std::string& policy, std::uint64_t seed) {
            const Trace trace = trace_from_text(text);
            const auto result = run_trace(trace, policy_from(policy), seed);
            py::dict out;
            py::dict per_kind;
            static const OpKind kinds[] = {OpKind::Insert, OpKind::DeleteMin, OpKind::DecreaseKey,
                                           OpKind::Meld};
            for (OpKind k : kinds) {
                const auto& ks = result.summary.stats(k);
                py::dict entry;
                entry["count"] = ks.count;
                entry["mean_cost"] = ks.mean_cost();
                entry["max_cost"] = ks.max_cost;
                per_kind[py::str(std::string(1, op_kind_code(k)))] = entry;
            }
            out["per_kind"] = per_kind;
            out["total_ops"] = result.summary.total_ops;
            out["final_n"] = result.summary.final_n;
            out["max_degree"] = result.summary.max_degree_observed;
            out["degree_bound_breaches"] = result.summary.degree_bound_breaches;
            out["windowed_mean_delete_min"] =
                windowed_mean(result.delete_min_costs, trace.measured_window());
            return out;
        },
        py::arg("trace"), py::arg("policy"), py::arg("seed") = 0);

    m.def(
        "diff_trace",
        [](const std::string& text, const std::string& policy,
           std::uint64_t seed) -> py::object {
            auto divergence = diff_run(trace_from_text(text), policy_from(policy), seed);
            if (!divergence) return py::none();
            py::dict out;
            out["op_index"] = divergence->op_index;
            out["detail"] = divergence->detail;
            return out;
        },
        py::arg("trace"), py::arg("policy"), py::arg("seed") = 0);

    m.def(
        "fit",
        [](const std::string& model, const std::vector<std::pair<double, double>>& points) {
            const auto result = fit_points(model_from(model), points);
            py::dict out;
            out["model"] = fit_model_name(result.model);
            out["coeff"] = result.exponent_or_coeff;
            out["intercept"] = result.intercept;
            out["r2"] = result.r2;
            out["points"] = result.points;
            return out;
        },
        py::arg("model"), py::arg("points"));
}
