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

#pragma once

#include <string>
#include <vector>

#include "rismimo/experiments.hpp"

// Text renderings of experiment results. Numbers use 12 significant digits; non-finite
// values become null in JSON. Nothing here touches the filesystem.

namespace rismimo
{
    std::string format_number(double value);

    // M,N,fp_direct,fp_both,fp_indirect,ch_direct,ch_both,ch_indirect
    std::string sweep_csv(const std::vector<SweepRow> &rows);

    // index,eig_direct,eig_both (index is 1-based)
    std::string eigen_csv(const EigenProfile &profile);

    // M,N,median_interference_ratio
    std::string mrc_csv(const std::vector<MrcRow> &rows);

    // [{quantity, closed_form, estimate, std_error, z_score, pass}, ...]
    std::string reports_json(const std::vector<MetricReport> &reports);

    struct AssumptionRow
    {
        Index elements = 0;
        AssumptionReport report;
    };
    std::string assumptions_json(const std::vector<AssumptionRow> &rows);

    // Closed-form quantities of every user (and every pair) of one scenario.
    std::string metrics_json(const Scenario &scenario);

} // namespace rismimo
