// SPDX-License-Identifier: Apache-2.0
//
// rismimo: channel statistics of RIS-assisted massive MIMO links
// Copyright (C) 2026 The rismimo contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rismimo/config_io.hpp"
#include "rismimo/experiments.hpp"

namespace py = pybind11;
using namespace rismimo;

namespace
{
    McSettings settings(std::size_t samples, std::uint64_t seed, unsigned workers) { return {samples, seed, workers}; }

    UncorrelatedParams uncorrelated(Index m, Index n, double beta_k, double beta_l, double xi_k, double xi_l)
    {
        UncorrelatedParams p{m, n, beta_k, beta_l, xi_k, xi_l};
        p.validate();
        return p;
    }

    const UserLink &user(const Scenario &s, Index k)
    {
        if (k < 0 || k >= s.bundle.num_users())
            throw py::index_error("user index out of range");
        return s.bundle.users[static_cast<std::size_t>(k)];
    }
} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Closed-form and Monte Carlo channel statistics of RIS-assisted massive MIMO links";

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init<>())
        .def_readwrite("antennas", &ScenarioConfig::antennas)
        .def_readwrite("correlated", &ScenarioConfig::correlated)
        .def_readwrite("master_seed", &ScenarioConfig::master_seed)
        .def_property_readonly("elements", [](const ScenarioConfig &c) { return c.ris.elements(); })
        .def_property_readonly("num_users", &ScenarioConfig::num_users)
        .def("with_dimensions", &ScenarioConfig::with_dimensions, py::arg("antennas"), py::arg("elements"))
        .def("validate", &ScenarioConfig::validate);

    m.def("config_from_json", &config_from_json, py::arg("text"));
    m.def("config_to_json", &config_to_json, py::arg("config"));

    py::class_<Scenario>(m, "Scenario")
        .def(py::init(&build_scenario), py::arg("config"))
        .def_property_readonly("antennas", [](const Scenario &s) { return s.bundle.antennas(); })
        .def_property_readonly("elements", [](const Scenario &s) { return s.bundle.elements(); })
        .def_property_readonly("num_users", [](const Scenario &s) { return s.bundle.num_users(); })
        .def_property_readonly("beta_s", [](const Scenario &s) { return s.bundle.beta_s; })
        .def_property_readonly("nominal_aoas", [](const Scenario &s) { return s.nominal_aoas; })
        .def("beta_direct", [](const Scenario &s, Index k) { return user(s, k).beta_direct; })
        .def("beta_ris", [](const Scenario &s, Index k) { return user(s, k).beta_ris; })
        .def("bs_covariance", [](const Scenario &s) { return CMatrix(s.bundle.bs_cov.matrix()); })
        .def("ris_covariance", [](const Scenario &s) { return CMatrix(s.bundle.ris_side_cov.matrix()); })
        .def("direct_covariance", [](const Scenario &s, Index k) { return CMatrix(user(s, k).direct_cov.matrix()); })
        .def("theta", [](const Scenario &s, Index k) {
            return theta_matrix(s.phase, s.bundle.ris_side_cov, user(s, k).ris_cov);
        })
        .def("second_moment", [](const Scenario &s, Index k) { return aggregated_statistics(s.bundle, s.phase, k).second_moment; })
        .def("fourth_moment", [](const Scenario &s, Index k) { return aggregated_statistics(s.bundle, s.phase, k).fourth_moment; })
        .def("aggregated_covariance", [](const Scenario &s, Index k) {
            return CMatrix(aggregated_statistics(s.bundle, s.phase, k).agg_covariance.matrix());
        });

    m.def("fp_metric", [](const Scenario &s, Index k, Index l) { return fp_metric(s.bundle, s.phase, k, l); },
          py::arg("scenario"), py::arg("k") = 0, py::arg("l") = 1);
    m.def("fp_metric_exact", [](const Scenario &s, Index k, Index l) { return fp_metric_exact(s.bundle, s.phase, k, l); },
          py::arg("scenario"), py::arg("k") = 0, py::arg("l") = 1);
    m.def("ch_metric", [](const Scenario &s, Index k) { return ch_metric(s.bundle, s.phase, k); }, py::arg("scenario"),
          py::arg("k") = 0);

    auto add_uncorrelated = [&m](const char *name, double (*fn)(const UncorrelatedParams &)) {
        m.def(
            name,
            [fn](Index mm, Index n, double beta_k, double beta_l, double xi_k, double xi_l) {
                return fn(uncorrelated(mm, n, beta_k, beta_l, xi_k, xi_l));
            },
            py::arg("M"), py::arg("N"), py::arg("beta_k"), py::arg("beta_l") = 0.0, py::arg("xi_k") = 0.0,
            py::arg("xi_l") = 0.0);
    };
    add_uncorrelated("second_moment_uncorrelated", &second_moment_uncorrelated);
    add_uncorrelated("fourth_moment_uncorrelated", &fourth_moment_uncorrelated);
    add_uncorrelated("fp_metric_uncorrelated", &fp_metric_uncorrelated);
    add_uncorrelated("ch_metric_uncorrelated", &ch_metric_uncorrelated);

    m.def("chebyshev_hardening_bound", &chebyshev_hardening_bound, py::arg("ch"), py::arg("epsilon"));
    m.def(
        "pathloss_to_beta",
        [](double d, double exponent, double gain, double ref) { return pathloss_to_beta(d, {exponent, gain, ref}); },
        py::arg("distance"), py::arg("exponent"), py::arg("reference_gain") = 1.0, py::arg("reference_distance") = 1.0);

    m.def(
        "local_scattering_covariance",
        [](double beta, std::vector<double> aoas, double sigma, Index antennas) {
            return CMatrix(local_scattering_covariance({beta, std::move(aoas), sigma, antennas}).matrix());
        },
        py::arg("beta"), py::arg("nominal_aoas"), py::arg("angular_std"), py::arg("antennas"));
    m.def(
        "ris_sinc_correlation",
        [](Index n_h, Index n_v, double d_h, double d_v, double wavelength) {
            return CMatrix(ris_sinc_correlation({n_h, n_v, d_h, d_v, wavelength}).matrix());
        },
        py::arg("n_h"), py::arg("n_v"), py::arg("d_h"), py::arg("d_v"), py::arg("wavelength"));
    m.def("hermitian_sqrt", [](const CMatrix &a) { return hermitian_sqrt(HermitianMatrix(a)); }, py::arg("a"));
    m.def("sorted_eigenvalues", [](const CMatrix &a) { return sorted_eigenvalues(HermitianMatrix(a)); }, py::arg("a"));

    py::class_<McSettings>(m, "McSettings")
        .def(py::init(&settings), py::arg("samples") = 200000, py::arg("seed") = 0, py::arg("workers") = 1)
        .def_readwrite("samples", &McSettings::samples)
        .def_readwrite("seed", &McSettings::seed)
        .def_readwrite("workers", &McSettings::workers);

    py::class_<EstimatorResult>(m, "EstimatorResult")
        .def_readonly("estimate", &EstimatorResult::estimate)
        .def_readonly("std_error", &EstimatorResult::std_error)
        .def_readonly("n_samples", &EstimatorResult::n_samples)
        .def_readonly("closed_form", &EstimatorResult::closed_form)
        .def_readonly("z_score", &EstimatorResult::z_score)
        .def("__repr__", [](const EstimatorResult &r) {
            return "EstimatorResult(estimate=" + std::to_string(r.estimate) +
                   ", std_error=" + std::to_string(r.std_error) + ", n=" + std::to_string(r.n_samples) + ")";
        });

    auto gil = py::call_guard<py::gil_scoped_release>();
    m.def(
        "estimate_second_moment",
        [](const Scenario &s, Index k, const McSettings &mc) { return estimate_second_moment(s.bundle, s.phase, k, mc); },
        py::arg("scenario"), py::arg("k"), py::arg("settings"), gil);
    m.def(
        "estimate_fourth_moment",
        [](const Scenario &s, Index k, const McSettings &mc) { return estimate_fourth_moment(s.bundle, s.phase, k, mc); },
        py::arg("scenario"), py::arg("k"), py::arg("settings"), gil);
    m.def(
        "estimate_fp",
        [](const Scenario &s, Index k, Index l, const McSettings &mc, bool empirical) {
            return estimate_fp(s.bundle, s.phase, k, l, mc,
                               empirical ? FpNormalization::empirical : FpNormalization::closed_form);
        },
        py::arg("scenario"), py::arg("k"), py::arg("l"), py::arg("settings"), py::arg("empirical") = false, gil);
    m.def(
        "estimate_ch", [](const Scenario &s, Index k, const McSettings &mc) { return estimate_ch(s.bundle, s.phase, k, mc); },
        py::arg("scenario"), py::arg("k"), py::arg("settings"), gil);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("M", &SweepRow::antennas)
        .def_readonly("N", &SweepRow::elements)
        .def_readonly("fp_direct", &SweepRow::fp_direct)
        .def_readonly("fp_both", &SweepRow::fp_both)
        .def_readonly("fp_indirect", &SweepRow::fp_indirect)
        .def_readonly("ch_direct", &SweepRow::ch_direct)
        .def_readonly("ch_both", &SweepRow::ch_both)
        .def_readonly("ch_indirect", &SweepRow::ch_indirect);

    m.def(
        "sweep_fp_ch",
        [](const ScenarioConfig &c, std::optional<Grid> grid, unsigned workers) {
            return sweep_fp_ch(c, grid ? *grid : default_grid(), workers);
        },
        py::arg("config"), py::arg("grid") = py::none(), py::arg("workers") = 1, gil);

    m.def(
        "eigenvalue_profile",
        [](const ScenarioConfig &c, Index mm, Index n, double threshold) {
            const EigenProfile p = eigenvalue_profile(c, mm, n, threshold);
            py::dict d;
            d["direct"] = p.direct.eigenvalues;
            d["both"] = p.both.eigenvalues;
            d["rank_direct"] = p.direct.numerical_rank;
            d["rank_both"] = p.both.numerical_rank;
            return d;
        },
        py::arg("config"), py::arg("M"), py::arg("N"), py::arg("rel_threshold") = default_rank_threshold);

    py::class_<MetricReport>(m, "MetricReport")
        .def_readonly("quantity", &MetricReport::quantity)
        .def_readonly("closed_form", &MetricReport::closed_form)
        .def_readonly("estimate", &MetricReport::estimate)
        .def_readonly("std_error", &MetricReport::std_error)
        .def_readonly("z_score", &MetricReport::z_score)
        .def_readonly("passed", &MetricReport::pass);

    m.def("validate_report", &validate_report, py::arg("config"), py::arg("samples"), py::arg("seed") = 0,
          py::arg("workers") = 1, gil);
}
