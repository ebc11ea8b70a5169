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

#include "rismimo/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace rismimo
{
    using nlohmann::ordered_json;

    std::string format_number(double value)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", value);
        return buf;
    }

    namespace
    {
        // Round to 12 significant digits so JSON and CSV agree on every value.
        ordered_json number(double v)
        {
            if (!std::isfinite(v))
                return nullptr;
            return std::stod(format_number(v));
        }

        ordered_json number(const std::optional<double> &v) { return v ? number(*v) : ordered_json(nullptr); }
    } // namespace

    std::string sweep_csv(const std::vector<SweepRow> &rows)
    {
        std::ostringstream os;
        os << "M,N,fp_direct,fp_both,fp_indirect,ch_direct,ch_both,ch_indirect\n";
        for (const SweepRow &r : rows)
            os << r.antennas << ',' << r.elements << ',' << format_number(r.fp_direct) << ','
               << format_number(r.fp_both) << ',' << format_number(r.fp_indirect) << ','
               << format_number(r.ch_direct) << ',' << format_number(r.ch_both) << ','
               << format_number(r.ch_indirect) << '\n';
        return os.str();
    }

    std::string eigen_csv(const EigenProfile &profile)
    {
        std::ostringstream os;
        os << "index,eig_direct,eig_both\n";
        const std::size_t n = std::max(profile.direct.eigenvalues.size(), profile.both.eigenvalues.size());
        for (std::size_t i = 0; i < n; ++i)
        {
            const double d = i < profile.direct.eigenvalues.size() ? profile.direct.eigenvalues[i] : 0.0;
            const double b = i < profile.both.eigenvalues.size() ? profile.both.eigenvalues[i] : 0.0;
            os << (i + 1) << ',' << format_number(d) << ',' << format_number(b) << '\n';
        }
        return os.str();
    }

    std::string mrc_csv(const std::vector<MrcRow> &rows)
    {
        std::ostringstream os;
        os << "M,N,median_interference_ratio\n";
        for (const MrcRow &r : rows)
            os << r.antennas << ',' << r.elements << ',' << format_number(r.median_ratio) << '\n';
        return os.str();
    }

    std::string reports_json(const std::vector<MetricReport> &reports)
    {
        ordered_json arr = ordered_json::array();
        for (const MetricReport &r : reports)
        {
            ordered_json o;
            o["quantity"] = r.quantity;
            o["closed_form"] = number(r.closed_form);
            o["estimate"] = number(r.estimate);
            o["std_error"] = number(r.std_error);
            o["z_score"] = number(r.z_score);
            o["pass"] = r.pass;
            arr.push_back(o);
        }
        return arr.dump(2) + "\n";
    }

    std::string assumptions_json(const std::vector<AssumptionRow> &rows)
    {
        ordered_json arr = ordered_json::array();
        for (const AssumptionRow &r : rows)
        {
            ordered_json o;
            o["N"] = r.elements;
            o["liminf_proxy"] = number(r.report.liminf_proxy);
            o["specnorm"] = number(r.report.specnorm);
            o["proxy_satisfied"] = r.report.proxy_satisfied;
            o["norm_satisfied"] = r.report.norm_satisfied;
            arr.push_back(o);
        }
        return arr.dump(2) + "\n";
    }

    std::string metrics_json(const Scenario &scenario)
    {
        const CovarianceBundle &b = scenario.bundle;
        ordered_json root;
        root["M"] = b.antennas();
        root["N"] = b.elements();
        root["beta_s"] = number(b.beta_s);

        ordered_json users = ordered_json::array();
        for (Index k = 0; k < b.num_users(); ++k)
        {
            const UserLink &u = b.users[static_cast<std::size_t>(k)];
            const AggregatedStatistics st = aggregated_statistics(b, scenario.phase, k);
            const PowerDecomposition pd = power_decomposition(b.antennas(), u.beta_direct, b.beta_s, st.theta);
            const RankProfile rd = rank_profile(u.direct_cov);
            const RankProfile ra = rank_profile(st.agg_covariance);
            ordered_json o;
            o["user"] = k + 1;
            o["beta_direct"] = number(u.beta_direct);
            o["beta_ris"] = number(u.beta_ris);
            o["theta_trace"] = number(st.theta_trace);
            o["second_moment"] = number(st.second_moment);
            o["fourth_moment"] = number(st.fourth_moment);
            o["ch"] = number(ch_metric(b, scenario.phase, k));
            o["power_direct"] = number(pd.direct);
            o["power_indirect"] = number(pd.indirect);
            o["rank_direct"] = rd.numerical_rank;
            o["rank_aggregated"] = ra.numerical_rank;
            users.push_back(o);
        }
        root["users"] = users;

        ordered_json pairs = ordered_json::array();
        for (Index k = 0; k < b.num_users(); ++k)
            for (Index l = k + 1; l < b.num_users(); ++l)
            {
                ordered_json o;
                o["users"] = {k + 1, l + 1};
                o["fp"] = number(fp_metric(b, scenario.phase, k, l));
                o["fp_exact"] = number(fp_metric_exact(b, scenario.phase, k, l));
                pairs.push_back(o);
            }
        root["pairs"] = pairs;
        return root.dump(2) + "\n";
    }

} // namespace rismimo
