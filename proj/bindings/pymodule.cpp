// Python bindings for the pagraph core. The module mirrors the C++ surface:
// model growth and censuses at the top level, with `theory`, `oracle`, and
// `experiment` submodules for the limiting tables, the exact enumerator, and
// the replicated CLT harness.

#include <pagraph/experiment.hpp>
#include <pagraph/martingale.hpp>
#include <pagraph/model.hpp>
#include <pagraph/oracle.hpp>
#include <pagraph/theory.hpp>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;

using pagraph::DegreeCensus;
using pagraph::GraphState;
using pagraph::ModelParams;
using pagraph::Xoshiro256pp;

PYBIND11_MODULE(_pagraph, m) {
    m.doc() = "Preferential-attachment degree censuses: growth model, limit theory, "
              "exact small-n oracle, and CLT experiments";

    // ------------------------------------------------------------ model layer
    m.def("validate_delta", &pagraph::validate_delta, py::arg("delta"),
          "Raise ValueError unless delta is finite and > -1.");

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<double, std::uint64_t, std::uint64_t>(), py::arg("delta"),
             py::arg("seed") = 0, py::arg("stream_id") = 0)
        .def_readonly("delta", &ModelParams::delta)
        .def_readonly("seed", &ModelParams::seed)
        .def_readonly("stream_id", &ModelParams::stream_id);

    py::class_<Xoshiro256pp>(m, "Xoshiro256pp")
        .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"),
             py::arg("stream_id") = 0)
        .def("next", &Xoshiro256pp::next)
        .def("uniform01", &Xoshiro256pp::uniform01)
        .def("standard_normal", &Xoshiro256pp::standard_normal);

    py::class_<DegreeCensus>(m, "DegreeCensus")
        .def_readonly("stage", &DegreeCensus::stage)
        .def_readonly("counts", &DegreeCensus::counts)
        .def_readonly("overflow", &DegreeCensus::overflow)
        .def_readonly("overflow_degree_mass", &DegreeCensus::overflow_degree_mass)
        .def("at", &DegreeCensus::at, py::arg("k"))
        .def("__repr__", [](const DegreeCensus& c) {
            std::ostringstream out;
            out << "DegreeCensus(stage=" << c.stage << ", counts=[";
            for (std::size_t i = 0; i < c.counts.size(); ++i) {
                out << (i ? ", " : "") << c.counts[i];
            }
            out << "], overflow=" << c.overflow << ")";
            return out.str();
        });

    py::class_<GraphState>(m, "GraphState")
        .def(py::init<const ModelParams&>(), py::arg("params"))
        .def_static("from_degrees", &GraphState::from_degrees, py::arg("delta"),
                    py::arg("degrees"))
        .def_property_readonly("n", &GraphState::n)
        .def_property_readonly("delta", &GraphState::delta)
        .def_property_readonly("degrees", &GraphState::degrees)
        .def_property_readonly("max_degree", &GraphState::max_degree)
        .def("degree", &GraphState::degree, py::arg("node"))
        .def("census_count", &GraphState::census_count, py::arg("degree"))
        .def("attachment_mass", &GraphState::attachment_mass);

    m.def("grow_to", &pagraph::grow_to, py::arg("state"), py::arg("n_target"), py::arg("rng"),
          "Advance the graph to stage n_target using the given random stream.");
    m.def("degree_census", &pagraph::degree_census, py::arg("state"), py::arg("k_max"),
          "Census truncated at k_max, with larger degrees aggregated as overflow.");
    m.def(
        "simulate_census",
        [](double delta, std::uint64_t n, std::uint64_t seed, int k_max,
           std::uint64_t stream_id) {
            ModelParams params(delta, seed, stream_id);
            auto rng = params.make_rng();
            GraphState state(params);
            state.reserve(n);
            pagraph::grow_to(state, n, rng);
            return pagraph::degree_census(state, k_max);
        },
        py::arg("delta"), py::arg("n"), py::arg("seed") = 0, py::arg("k_max") = 10,
        py::arg("stream_id") = 0,
        "Grow one path to stage n and return its truncated census.");

    // ----------------------------------------------------------- theory layer
    auto theory = m.def_submodule("theory", "limit frequencies, mean recursion, covariance");
    theory.def("pk", &pagraph::theory::pk, py::arg("k"), py::arg("delta"));
    theory.def("c_norm", &pagraph::theory::c_norm, py::arg("delta"));
    theory.def("sigma1_sq", &pagraph::theory::sigma1_sq, py::arg("delta"));
    theory.def("pk_tail", &pagraph::theory::pk_tail, py::arg("k_start"), py::arg("delta"));
    theory.def("weighted_pk_tail", &pagraph::theory::weighted_pk_tail, py::arg("m_start"),
               py::arg("delta"));
    theory.def("b_coef", &pagraph::theory::b_coef, py::arg("j"), py::arg("k"), py::arg("delta"));
    theory.def("a_coef", &pagraph::theory::a_coef, py::arg("n"), py::arg("k"), py::arg("delta"));
    theory.def("mean_row", &pagraph::theory::mean_row, py::arg("n"), py::arg("k_max"),
               py::arg("delta"), "nu_n(k) for k = 1..k_max, from the exact recursion.");
    theory.def("a_cov", &pagraph::theory::a_cov, py::arg("i"), py::arg("j"), py::arg("delta"));
    theory.def("r_y", &pagraph::theory::r_y, py::arg("i"), py::arg("j"), py::arg("delta"));
    theory.def("r_z", &pagraph::theory::r_z, py::arg("i"), py::arg("j"), py::arg("delta"));
    theory.def("sigma_matrix", &pagraph::theory::sigma_matrix, py::arg("k_max"),
               py::arg("delta"), "Limiting covariance of the scaled census vector.");
    theory.def("coeff_matrices", &pagraph::theory::coeff_matrices, py::arg("k_max"),
               py::arg("delta"), "The (C, D) coefficient pair with D = C^-1.");
    theory.def("zero_identity_residual", &pagraph::theory::zero_identity_residual,
               py::arg("i"), py::arg("delta"));
    theory.def("simplify_identity_residual", &pagraph::theory::simplify_identity_residual,
               py::arg("i"), py::arg("delta"));
    theory.def("ident_b_residual", &pagraph::theory::ident_b_residual, py::arg("i"),
               py::arg("j"), py::arg("r"), py::arg("delta"));

    // ----------------------------------------------------------- oracle layer
    auto oracle = m.def_submodule("oracle", "exact census distribution for small n");
    oracle.attr("DEFAULT_BUDGET") = pagraph::oracle::kDefaultBudget;

    py::class_<pagraph::oracle::ExactDistribution>(oracle, "ExactDistribution")
        .def_readonly("stage", &pagraph::oracle::ExactDistribution::stage)
        .def_readonly("k_max", &pagraph::oracle::ExactDistribution::k_max)
        .def_readonly("support", &pagraph::oracle::ExactDistribution::support)
        .def("total_probability", &pagraph::oracle::ExactDistribution::total_probability)
        .def("mean_count", &pagraph::oracle::ExactDistribution::mean_count, py::arg("k"));

    oracle.def("enumerate", &pagraph::oracle::enumerate, py::arg("n_max"), py::arg("delta"),
               py::arg("budget") = pagraph::oracle::kDefaultBudget,
               "Exact census distributions for every stage 1..n_max.");
    oracle.def("exact_mean", &pagraph::oracle::exact_mean, py::arg("n"), py::arg("k"),
               py::arg("delta"));
    oracle.def("exact_cov", &pagraph::oracle::exact_cov, py::arg("n"), py::arg("i"),
               py::arg("j"), py::arg("delta"));

    // ------------------------------------------------------- martingale layer
    auto martingale = m.def_submodule("martingale", "degree-count martingales");
    martingale.def("mg_one_step_residual", &pagraph::martingale::mg_one_step_residual,
                   py::arg("state"), py::arg("k"), py::arg("delta"),
                   "|E(M_{n+1} | state) - M_n| under the exact attachment law.");
    martingale.def("martingale_value", &pagraph::martingale::martingale_value,
                   py::arg("census"), py::arg("nu_row"), py::arg("k"), py::arg("delta"));

    // ------------------------------------------------------- experiment layer
    auto experiment = m.def_submodule("experiment", "replicated CLT experiments");
    using pagraph::experiment::Centering;
    using pagraph::experiment::ExperimentConfig;
    using pagraph::experiment::ExperimentReport;
    using pagraph::experiment::Verdict;

    py::enum_<Centering>(experiment, "Centering")
        .value("exact_mean", Centering::exact_mean)
        .value("limit_pk", Centering::limit_pk);

    py::class_<ExperimentConfig>(experiment, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("delta", &ExperimentConfig::delta)
        .def_readwrite("n", &ExperimentConfig::n)
        .def_readwrite("replicas", &ExperimentConfig::replicas)
        .def_readwrite("k_max", &ExperimentConfig::k_max)
        .def_readwrite("centering", &ExperimentConfig::centering)
        .def_readwrite("master_seed", &ExperimentConfig::master_seed)
        .def_readwrite("workers", &ExperimentConfig::workers)
        .def_readwrite("step_budget", &ExperimentConfig::step_budget)
        .def("validate", &ExperimentConfig::validate);

    py::class_<Verdict>(experiment, "Verdict")
        .def_readonly("name", &Verdict::name)
        .def_readonly("passed", &Verdict::pass)
        .def_readonly("gated", &Verdict::gated)
        .def_readonly("detail", &Verdict::detail);

    py::class_<ExperimentReport>(experiment, "ExperimentReport")
        .def_readonly("samples", &ExperimentReport::samples)
        .def_readonly("center", &ExperimentReport::center)
        .def_readonly("mean_shift", &ExperimentReport::mean_shift)
        .def_readonly("sigma_theory", &ExperimentReport::sigma_theory)
        .def_readonly("verdicts", &ExperimentReport::verdicts)
        .def_readonly("all_pass", &ExperimentReport::all_pass)
        .def("report_json",
             [](const ExperimentReport& report) {
                 std::ostringstream out;
                 pagraph::experiment::write_report_json(report, out);
                 return out.str();
             })
        .def("samples_csv", [](const ExperimentReport& report) {
            std::ostringstream out;
            pagraph::experiment::write_samples_csv(report, out);
            return out.str();
        });

    experiment.def("run_experiment", &pagraph::experiment::run_experiment, py::arg("config"),
                   py::call_guard<py::gil_scoped_release>(),
                   "Run the replicated experiment and its gate battery.");
}
