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

#include "rismimo/config_io.hpp"

#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

#include <json.hpp>

namespace rismimo
{
    using nlohmann::json;

    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t\r\n");
            if (b == std::string::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r\n");
            return s.substr(b, e - b + 1);
        }

        // Parses the whole string as a double; empty or trailing garbage is an error.
        double parse_number(const std::string &text, const std::string &what)
        {
            const std::string t = trim(text);
            char *end = nullptr;
            const double v = std::strtod(t.c_str(), &end);
            if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v))
                throw ConfigError("cannot parse " + what + " '" + text + "'");
            return v;
        }

        bool ends_with(const std::string &s, const std::string &suffix)
        {
            return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
        }

        void reject_unknown(const json &obj, const std::set<std::string> &allowed, const std::string &where)
        {
            if (!obj.is_object())
                throw ConfigError(where + ": expected an object");
            for (const auto &item : obj.items())
                if (!allowed.count(item.key()))
                    throw ConfigError(where + ": unknown key '" + item.key() + "'");
        }

        double as_number(const json &v, const std::string &where)
        {
            if (!v.is_number())
                throw ConfigError(where + ": expected a number");
            return v.get<double>();
        }

        Index as_count(const json &v, const std::string &where)
        {
            if (!v.is_number_integer() || v.get<long long>() < 1)
                throw ConfigError(where + ": expected a positive integer");
            return static_cast<Index>(v.get<long long>());
        }

        std::uint64_t as_seed(const json &v, const std::string &where)
        {
            if (v.is_number_unsigned())
                return v.get<std::uint64_t>();
            if (v.is_number_integer() && v.get<long long>() >= 0)
                return static_cast<std::uint64_t>(v.get<long long>());
            throw ConfigError(where + ": expected a non-negative integer seed");
        }

        double as_angle(const json &v, const std::string &where)
        {
            if (v.is_number())
                return v.get<double>();
            if (v.is_string())
                return parse_angle(v.get<std::string>());
            throw ConfigError(where + ": expected an angle (number in rad or string with deg/rad suffix)");
        }

        Point2 as_point(const json &v, const std::string &where)
        {
            if (!v.is_array() || v.size() != 2)
                throw ConfigError(where + ": expected [x, y]");
            return {as_number(v[0], where), as_number(v[1], where)};
        }

        PathlossModel as_pathloss(const json &v, PathlossModel base, const std::string &where)
        {
            reject_unknown(v, {"exponent", "reference_gain", "reference_distance"}, where);
            if (v.contains("exponent"))
                base.exponent = as_number(v["exponent"], where + ".exponent");
            if (v.contains("reference_gain"))
            {
                const json &g = v["reference_gain"];
                base.reference_gain = g.is_string() ? parse_gain(g.get<std::string>())
                                                    : as_number(g, where + ".reference_gain");
            }
            if (v.contains("reference_distance"))
                base.reference_distance = as_number(v["reference_distance"], where + ".reference_distance");
            return base;
        }

        json pathloss_json(const PathlossModel &p)
        {
            return {{"exponent", p.exponent},
                    {"reference_gain", p.reference_gain},
                    {"reference_distance", p.reference_distance}};
        }
    } // namespace

    double parse_angle(const std::string &text)
    {
        const std::string t = trim(text);
        if (ends_with(t, "deg"))
            return deg_to_rad(parse_number(t.substr(0, t.size() - 3), "angle"));
        if (ends_with(t, "rad"))
            return parse_number(t.substr(0, t.size() - 3), "angle");
        return parse_number(t, "angle");
    }

    double parse_gain(const std::string &text)
    {
        const std::string t = trim(text);
        if (ends_with(t, "dB"))
            return std::pow(10.0, parse_number(t.substr(0, t.size() - 2), "gain") / 10.0);
        return parse_number(t, "gain");
    }

    std::vector<std::pair<Index, Index>> parse_grid(const std::string &text)
    {
        std::vector<std::pair<Index, Index>> out;
        std::stringstream ss(text);
        std::string token;
        auto count = [](const std::string &s) {
            const double v = parse_number(s, "grid size");
            if (v < 1.0 || v != std::floor(v))
                throw ConfigError("grid sizes must be positive integers, got '" + s + "'");
            return static_cast<Index>(v);
        };
        while (std::getline(ss, token, ','))
        {
            token = trim(token);
            if (token.empty())
                continue;
            const auto x = token.find_first_of("xX");
            if (x == std::string::npos)
            {
                const Index n = count(token);
                out.emplace_back(n, n);
            }
            else
                out.emplace_back(count(token.substr(0, x)), count(token.substr(x + 1)));
        }
        if (out.empty())
            throw ConfigError("grid is empty");
        return out;
    }

    ScenarioConfig config_from_json(const std::string &text)
    {
        json root;
        try
        {
            root = json::parse(text);
        }
        catch (const json::parse_error &e)
        {
            throw ConfigError(std::string("config: ") + e.what());
        }

        ScenarioConfig c;
        reject_unknown(root,
                       {"antennas", "ris", "bs_position", "ris_position", "user_positions", "clusters", "pathloss",
                        "correlated", "phase", "master_seed", "nominal_aoas"},
                       "config");

        if (root.contains("antennas"))
            c.antennas = as_count(root["antennas"], "antennas");
        if (root.contains("ris"))
        {
            const json &r = root["ris"];
            reject_unknown(r, {"n_h", "n_v", "d_h", "d_v", "wavelength"}, "ris");
            if (r.contains("n_h"))
                c.ris.n_h = as_count(r["n_h"], "ris.n_h");
            if (r.contains("n_v"))
                c.ris.n_v = as_count(r["n_v"], "ris.n_v");
            if (r.contains("d_h"))
                c.ris.d_h = as_number(r["d_h"], "ris.d_h");
            if (r.contains("d_v"))
                c.ris.d_v = as_number(r["d_v"], "ris.d_v");
            if (r.contains("wavelength"))
                c.ris.wavelength = as_number(r["wavelength"], "ris.wavelength");
        }
        if (root.contains("bs_position"))
            c.bs_position = as_point(root["bs_position"], "bs_position");
        if (root.contains("ris_position"))
            c.ris_position = as_point(root["ris_position"], "ris_position");
        if (root.contains("user_positions"))
        {
            const json &u = root["user_positions"];
            if (!u.is_array())
                throw ConfigError("user_positions: expected a list of [x, y]");
            c.user_positions.clear();
            for (const json &p : u)
                c.user_positions.push_back(as_point(p, "user_positions"));
        }
        if (root.contains("clusters"))
        {
            const json &cl = root["clusters"];
            reject_unknown(cl, {"count", "angular_std", "aoa_seed"}, "clusters");
            if (cl.contains("count"))
                c.clusters.count = as_count(cl["count"], "clusters.count");
            if (cl.contains("angular_std"))
                c.clusters.angular_std = as_angle(cl["angular_std"], "clusters.angular_std");
            if (cl.contains("aoa_seed"))
                c.clusters.aoa_seed = as_seed(cl["aoa_seed"], "clusters.aoa_seed");
        }
        if (root.contains("pathloss"))
        {
            const json &pl = root["pathloss"];
            reject_unknown(pl, {"direct", "ris"}, "pathloss");
            if (pl.contains("direct"))
                c.direct_pathloss = as_pathloss(pl["direct"], c.direct_pathloss, "pathloss.direct");
            if (pl.contains("ris"))
                c.ris_pathloss = as_pathloss(pl["ris"], c.ris_pathloss, "pathloss.ris");
        }
        if (root.contains("correlated"))
        {
            if (!root["correlated"].is_boolean())
                throw ConfigError("correlated: expected true or false");
            c.correlated = root["correlated"].get<bool>();
        }
        if (root.contains("phase"))
        {
            const json &ph = root["phase"];
            reject_unknown(ph, {"mode", "seed", "thetas"}, "phase");
            const std::string mode = ph.value("mode", std::string("zero"));
            if (mode == "zero")
                c.phase.mode = PhaseSpec::Mode::zero;
            else if (mode == "uniform-random")
                c.phase.mode = PhaseSpec::Mode::uniform_random;
            else if (mode == "explicit")
                c.phase.mode = PhaseSpec::Mode::explicit_list;
            else
                throw ConfigError("phase.mode: expected zero, uniform-random or explicit");
            if (ph.contains("seed"))
                c.phase.seed = as_seed(ph["seed"], "phase.seed");
            if (ph.contains("thetas"))
            {
                if (!ph["thetas"].is_array())
                    throw ConfigError("phase.thetas: expected a list of angles");
                for (const json &t : ph["thetas"])
                    c.phase.thetas.push_back(as_angle(t, "phase.thetas"));
            }
        }
        if (root.contains("master_seed"))
            c.master_seed = as_seed(root["master_seed"], "master_seed");
        if (root.contains("nominal_aoas"))
        {
            const json &a = root["nominal_aoas"];
            if (!a.is_array())
                throw ConfigError("nominal_aoas: expected one list of angles per link");
            std::vector<std::vector<double>> links;
            for (const json &link : a)
            {
                if (!link.is_array())
                    throw ConfigError("nominal_aoas: expected one list of angles per link");
                std::vector<double> psi;
                for (const json &v : link)
                    psi.push_back(as_angle(v, "nominal_aoas"));
                links.push_back(std::move(psi));
            }
            c.nominal_aoas = std::move(links);
        }

        c.validate();
        return c;
    }

    std::string config_to_json(const ScenarioConfig &c)
    {
        json users = json::array();
        for (const Point2 &p : c.user_positions)
            users.push_back({p.x, p.y});

        json phase;
        switch (c.phase.mode)
        {
        case PhaseSpec::Mode::zero:
            phase = {{"mode", "zero"}};
            break;
        case PhaseSpec::Mode::uniform_random:
            phase = {{"mode", "uniform-random"}, {"seed", c.phase.seed}};
            break;
        case PhaseSpec::Mode::explicit_list:
            phase = {{"mode", "explicit"}, {"thetas", c.phase.thetas}};
            break;
        }

        json root = {
            {"antennas", c.antennas},
            {"ris",
             {{"n_h", c.ris.n_h}, {"n_v", c.ris.n_v}, {"d_h", c.ris.d_h}, {"d_v", c.ris.d_v},
              {"wavelength", c.ris.wavelength}}},
            {"bs_position", {c.bs_position.x, c.bs_position.y}},
            {"ris_position", {c.ris_position.x, c.ris_position.y}},
            {"user_positions", users},
            {"clusters",
             {{"count", c.clusters.count}, {"angular_std", c.clusters.angular_std}, {"aoa_seed", c.clusters.aoa_seed}}},
            {"pathloss", {{"direct", pathloss_json(c.direct_pathloss)}, {"ris", pathloss_json(c.ris_pathloss)}}},
            {"correlated", c.correlated},
            {"phase", phase},
            {"master_seed", c.master_seed},
        };
        if (c.nominal_aoas)
            root["nominal_aoas"] = *c.nominal_aoas;
        return root.dump(2) + "\n";
    }

} // namespace rismimo
