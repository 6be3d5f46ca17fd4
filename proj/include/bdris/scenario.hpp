// SPDX-License-Identifier: Apache-2.0
//
// bdris - multiport models and RIS configuration solvers for full-duplex links
// Copyright (C) 2026 The bdris authors
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

#ifndef BDRIS_SCENARIO_HPP
#define BDRIS_SCENARIO_HPP

// Experiment definitions: config documents, figure presets, sweeps over the uplink user angle
// and CSV / SVG output.
//
// Config documents are flat JSON objects whose keys are scenario_config field names. Noise
// powers may alternatively be given in dBm as sigma_d2_dbm / sigma_u2_dbm. Unknown keys are
// rejected.

#include "channels.hpp"
#include "error.hpp"
#include "metrics.hpp"
#include "optimizers.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace bdris
{
    // ---- config ------------------------------------------------------------------------------

    namespace detail
    {
        inline std::pair<std::size_t, std::size_t> line_column(const std::string &text, std::size_t byte)
        {
            std::size_t line = 1, col = 1;
            for (std::size_t i = 0; i < std::min(byte, text.size()); ++i)
            {
                if (text[i] == '\n')
                {
                    ++line;
                    col = 1;
                }
                else
                    ++col;
            }
            return {line, col};
        }

        template <typename T>
        T config_value(const nlohmann::json &v, const std::string &key)
        {
            try
            {
                if constexpr (std::is_same_v<T, bool>)
                {
                    if (!v.is_boolean())
                        throw std::invalid_argument("expected a boolean");
                    return v.get<bool>();
                }
                else if constexpr (std::is_integral_v<T>)
                {
                    if (!v.is_number_unsigned())
                        throw std::invalid_argument("expected a nonnegative integer");
                    return v.get<T>();
                }
                else
                {
                    if (!v.is_number())
                        throw std::invalid_argument("expected a number");
                    return v.get<T>();
                }
            }
            catch (const std::exception &e)
            {
                fail(error_category::config, "key '" + key + "': " + e.what() + ", got " + v.dump());
            }
        }
    }

    // Parses a config document; missing keys keep their defaults
    inline scenario_config parse_config_string(const std::string &text, const std::string &source = "<string>")
    {
        nlohmann::json doc;
        try
        {
            // Empty documents mean "all defaults"
            if (text.find_first_not_of(" \t\r\n") == std::string::npos)
                doc = nlohmann::json::object();
            else
                doc = nlohmann::json::parse(text);
        }
        catch (const nlohmann::json::parse_error &e)
        {
            const auto [line, col] = detail::line_column(text, e.byte > 0 ? e.byte - 1 : 0);
            fail(error_category::config, source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                             ": parse error: " + e.what());
        }
        if (!doc.is_object())
            fail(error_category::config, source + ": config document must be a JSON object");

        scenario_config cfg;
        for (const auto &[key, v] : doc.items())
        {
            using detail::config_value;
            if (key == "n_i")
                cfg.n_i = config_value<std::size_t>(v, key);
            else if (key == "phi_bi")
                cfg.phi_bi = config_value<double>(v, key);
            else if (key == "phi_rdi")
                cfg.phi_rdi = config_value<double>(v, key);
            else if (key == "phi_itu")
                cfg.phi_itu = config_value<double>(v, key);
            else if (key == "d_bi")
                cfg.d_bi = config_value<double>(v, key);
            else if (key == "d_rdi")
                cfg.d_rdi = config_value<double>(v, key);
            else if (key == "d_itu")
                cfg.d_itu = config_value<double>(v, key);
            else if (key == "zeta0_db")
                cfg.zeta0_db = config_value<double>(v, key);
            else if (key == "d0")
                cfg.d0 = config_value<double>(v, key);
            else if (key == "epsilon")
                cfg.epsilon = config_value<double>(v, key);
            else if (key == "p_d")
                cfg.p_d = config_value<double>(v, key);
            else if (key == "p_u")
                cfg.p_u = config_value<double>(v, key);
            else if (key == "sigma_d2")
                cfg.sigma_d2 = config_value<double>(v, key);
            else if (key == "sigma_u2")
                cfg.sigma_u2 = config_value<double>(v, key);
            else if (key == "sigma_d2_dbm")
                cfg.sigma_d2 = dbm_to_watt(config_value<double>(v, key));
            else if (key == "sigma_u2_dbm")
                cfg.sigma_u2 = dbm_to_watt(config_value<double>(v, key));
            else if (key == "design_with_ss")
                cfg.design_with_ss = config_value<bool>(v, key);
            else if (key == "eval_with_ss")
                cfg.eval_with_ss = config_value<bool>(v, key);
            else if (key == "sweep_points")
                cfg.sweep_points = config_value<std::size_t>(v, key);
            else if (key == "seed")
                cfg.seed = config_value<std::uint64_t>(v, key);
            else
                fail(error_category::config, source + ": unknown key '" + key + "'");
        }
        cfg.validate();
        return cfg;
    }

    inline scenario_config parse_config(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            fail(error_category::io, "cannot open config file " + path.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_config_string(ss.str(), path.string());
    }

    // ---- presets -----------------------------------------------------------------------------

    enum class preset_kind
    {
        beam_pattern, // Patterns over the probe angle at fixed uplink user positions
        strength,     // Normalized channel strengths versus the uplink user angle
        rate          // Rates versus the uplink user angle
    };

    struct preset
    {
        std::string id;
        preset_kind kind = preset_kind::strength;
        std::string title;
        double phi_bi = std::numbers::pi / 6.0;
        double phi_rdi = std::numbers::pi / 2.0;
        std::size_t n_i = 64;
        bool design_with_ss = true;
        bool eval_with_ss = true;
        std::vector<double> beam_phi_itu; // Uplink user positions for beam-pattern presets
    };

    inline const std::vector<preset> &presets()
    {
        using std::numbers::pi;
        static const std::vector<preset> all = {
            {"fig4", preset_kind::beam_pattern, "Beam patterns without structural scattering", pi / 6, pi / 2, 16, false, false, {2 * pi / 3, pi / 2}},
            {"fig5", preset_kind::beam_pattern, "Beam patterns with structural scattering", pi / 6, pi / 2, 16, true, true, {2 * pi / 3, pi / 2}},
            {"fig6", preset_kind::strength, "Normalized channel strength without structural scattering", pi / 6, pi / 2, 64, false, false, {}},
            {"fig7a", preset_kind::strength, "Normalized channel strength with structural scattering", pi / 6, pi / 2, 64, true, true, {}},
            {"fig7b", preset_kind::strength, "Normalized channel strength with structural scattering", pi / 6, 5 * pi / 6, 64, true, true, {}},
            {"fig8a", preset_kind::strength, "Normalized channel strength, designed without and evaluated with structural scattering", pi / 6, pi / 2, 64, false, true, {}},
            {"fig8b", preset_kind::strength, "Normalized channel strength, designed without and evaluated with structural scattering", pi / 6, 5 * pi / 6, 64, false, true, {}},
            {"fig9", preset_kind::rate, "Rates without structural scattering", pi / 6, pi / 2, 64, false, false, {}},
            {"fig10a", preset_kind::rate, "Rates with structural scattering", pi / 6, pi / 2, 64, true, true, {}},
            {"fig10b", preset_kind::rate, "Rates with structural scattering", pi / 6, 5 * pi / 6, 64, true, true, {}},
            {"fig11a", preset_kind::rate, "Rates, designed without and evaluated with structural scattering", pi / 6, pi / 2, 64, false, true, {}},
            {"fig11b", preset_kind::rate, "Rates, designed without and evaluated with structural scattering", pi / 6, 5 * pi / 6, 64, false, true, {}},
        };
        return all;
    }

    // "custom" takes geometry and mode flags from the config itself
    inline preset find_preset(const std::string &id, const scenario_config &cfg)
    {
        if (id == "custom")
            return {"custom", preset_kind::rate, "Custom sweep", cfg.phi_bi, cfg.phi_rdi, cfg.n_i, cfg.design_with_ss, cfg.eval_with_ss, {}};
        for (const auto &p : presets())
            if (p.id == id)
                return p;
        std::string known = "custom";
        for (const auto &p : presets())
            known += ", " + p.id;
        fail(error_category::argument, "unknown preset '" + id + "' (known: " + known + ")");
    }

    // Scenario with the preset's geometry and mode flags applied
    inline scenario_config apply_preset(scenario_config cfg, const preset &p)
    {
        cfg.phi_bi = p.phi_bi;
        cfg.phi_rdi = p.phi_rdi;
        cfg.n_i = p.n_i;
        cfg.design_with_ss = p.design_with_ss;
        cfg.eval_with_ss = p.eval_with_ss;
        cfg.validate();
        return cfg;
    }

    // ---- sweeps ------------------------------------------------------------------------------

    inline constexpr const char *scheme_reciprocal = "reciprocal";
    inline constexpr const char *scheme_nonreciprocal = "non-reciprocal";

    struct sweep_row
    {
        double phi_itu = 0.0;
        double p_u_norm = 0.0, p_d_norm = 0.0;
        double r_u = 0.0, r_d = 0.0;
        double residual = 0.0;    // ||X - Theta Y||_F^2 for the design-mode targets
        double sigma_trace = 0.0; // Tr(Sigma) of X Y^H
    };

    struct sweep_result
    {
        std::string scheme;
        bool design_with_ss = true;
        bool eval_with_ss = true;
        std::vector<sweep_row> rows; // Ascending phi_itu
    };

    struct beam_result
    {
        std::string scheme;
        bool design_with_ss = true;
        bool eval_with_ss = true;
        double phi_itu = 0.0;
        beam_pattern_set patterns;
    };

    struct experiment_output
    {
        preset setup;
        scenario_config config; // With the preset applied
        std::vector<sweep_result> sweeps;
        std::vector<beam_result> beams;
    };

    struct designed_pair
    {
        channel_set channels;
        ris_solution reciprocal;
        ris_solution nonreciprocal;
        projection_targets targets;
    };

    // Both RIS designs for one scenario. The reciprocal design maximizes the uplink.
    inline designed_pair design_both(const scenario_config &cfg)
    {
        designed_pair d;
        d.channels = build_channels(cfg);
        d.reciprocal = reciprocal_design(cfg, d.channels, cfg.design_with_ss);
        d.targets = build_projection_targets(d.channels, cfg.design_with_ss);
        d.nonreciprocal = procrustes_unitary(d.targets, cfg.design_with_ss);
        return d;
    }

    namespace detail
    {
        inline sweep_row evaluate_row(const scenario_config &cfg, const ris_solution &sol, const designed_pair &d)
        {
            const link_metrics lm = rates(d.channels, sol.theta, cfg, cfg.eval_with_ss);
            sweep_row r;
            r.phi_itu = cfg.phi_itu;
            r.p_u_norm = lm.p_u_norm;
            r.p_d_norm = lm.p_d_norm;
            r.r_u = lm.r_u;
            r.r_d = lm.r_d;
            r.residual = projection_residual(d.targets.x, d.targets.y, sol.theta);
            r.sigma_trace = d.nonreciprocal.diagnostics->sigma_trace;
            return r;
        }

        // Runs fn(i) for i in [0, n) on up to `threads` workers; each index is handled exactly once
        template <typename F>
        void parallel_for(std::size_t n, std::size_t threads, F &&fn)
        {
            threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
            if (threads == 1)
            {
                for (std::size_t i = 0; i < n; ++i)
                    fn(i);
                return;
            }
            std::vector<std::jthread> pool;
            std::vector<std::exception_ptr> errors(threads);
            for (std::size_t w = 0; w < threads; ++w)
                pool.emplace_back([&, w]
                                  {
                                      try
                                      {
                                          for (std::size_t i = w; i < n; i += threads)
                                              fn(i);
                                      }
                                      catch (...)
                                      {
                                          errors[w] = std::current_exception();
                                      } });
            pool.clear();
            for (auto &e : errors)
                if (e)
                    std::rethrow_exception(e);
        }
    }

    // Sweeps the uplink user over cfg.sweep_points angles in [0, pi] (or evaluates beam patterns
    // for beam-pattern presets). Output is identical for any thread count.
    inline experiment_output run_sweep(const scenario_config &base, const std::string &preset_id, std::size_t threads = 1)
    {
        base.validate();
        experiment_output out;
        out.setup = find_preset(preset_id, base);
        out.config = apply_preset(base, out.setup);
        const scenario_config &cfg = out.config;
        const std::vector<double> grid = angle_grid(cfg.sweep_points);

        if (out.setup.kind == preset_kind::beam_pattern)
        {
            for (double phi_itu : out.setup.beam_phi_itu)
            {
                scenario_config c = cfg;
                c.phi_itu = phi_itu;
                const designed_pair d = design_both(c);
                for (const auto *sol : {&d.reciprocal, &d.nonreciprocal})
                    out.beams.push_back({sol->reciprocal ? scheme_reciprocal : scheme_nonreciprocal, cfg.design_with_ss,
                                         cfg.eval_with_ss, phi_itu, beam_patterns(d.channels, sol->theta, cfg.eval_with_ss, grid)});
            }
            return out;
        }

        sweep_result rec{scheme_reciprocal, cfg.design_with_ss, cfg.eval_with_ss, std::vector<sweep_row>(grid.size())};
        sweep_result nonrec{scheme_nonreciprocal, cfg.design_with_ss, cfg.eval_with_ss, std::vector<sweep_row>(grid.size())};
        detail::parallel_for(grid.size(), threads, [&](std::size_t i)
                             {
                                 scenario_config c = cfg;
                                 c.phi_itu = grid[i];
                                 const designed_pair d = design_both(c);
                                 rec.rows[i] = detail::evaluate_row(c, d.reciprocal, d);
                                 nonrec.rows[i] = detail::evaluate_row(c, d.nonreciprocal, d); });
        out.sweeps.push_back(std::move(rec));
        out.sweeps.push_back(std::move(nonrec));
        return out;
    }

    // ---- output ------------------------------------------------------------------------------

    inline constexpr const char *sweep_csv_header = "scheme,design_ss,eval_ss,phi_itu,p_u_norm,p_d_norm,r_u,r_d,residual,sigma_trace";
    inline constexpr const char *beam_csv_header = "scheme,design_ss,eval_ss,phi_itu,phi,p_d_imp,p_d_ref,p_u_imp,p_u_ref";

    namespace detail
    {
        inline std::string sci(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17e", v);
            return buf;
        }

        inline void write_file(const std::filesystem::path &path, const std::string &content)
        {
            std::ofstream f(path, std::ios::binary | std::ios::trunc);
            if (!f)
                fail(error_category::io, "cannot open " + path.string() + " for writing");
            f << content;
            f.flush();
            if (!f)
                fail(error_category::io, "failed writing " + path.string());
        }
    }

    inline std::string sweep_csv(const std::vector<sweep_result> &results)
    {
        if (results.empty())
            fail(error_category::argument, "sweep_csv: no results");
        std::string s = sweep_csv_header;
        s += '\n';
        for (const auto &r : results)
            for (const auto &row : r.rows)
            {
                using detail::sci;
                s += r.scheme + ',' + (r.design_with_ss ? "1" : "0") + ',' + (r.eval_with_ss ? "1" : "0") + ',' +
                     sci(row.phi_itu) + ',' + sci(row.p_u_norm) + ',' + sci(row.p_d_norm) + ',' + sci(row.r_u) + ',' +
                     sci(row.r_d) + ',' + sci(row.residual) + ',' + sci(row.sigma_trace) + '\n';
            }
        return s;
    }

    inline std::string beam_csv(const std::vector<beam_result> &results)
    {
        if (results.empty())
            fail(error_category::argument, "beam_csv: no results");
        std::string s = beam_csv_header;
        s += '\n';
        for (const auto &r : results)
        {
            const auto &p = r.patterns;
            for (std::size_t i = 0; i < p.grid.size(); ++i)
            {
                using detail::sci;
                s += r.scheme + ',' + (r.design_with_ss ? "1" : "0") + ',' + (r.eval_with_ss ? "1" : "0") + ',' +
                     sci(r.phi_itu) + ',' + sci(p.grid[i]) + ',' + sci(p.p_d_imp[i]) + ',' + sci(p.p_d_ref[i]) + ',' +
                     sci(p.p_u_imp[i]) + ',' + sci(p.p_u_ref[i]) + '\n';
            }
        }
        return s;
    }

    inline void emit_csv(const std::vector<sweep_result> &results, const std::filesystem::path &path)
    {
        detail::write_file(path, sweep_csv(results));
    }

    inline void emit_csv(const std::vector<beam_result> &results, const std::filesystem::path &path)
    {
        detail::write_file(path, beam_csv(results));
    }

    // ---- SVG ---------------------------------------------------------------------------------

    namespace svg
    {
        struct series
        {
            std::string label;
            std::string color;
            std::vector<double> x, y;
            bool dashed = false;
        };

        struct panel
        {
            std::string title, x_label, y_label;
            std::vector<series> lines;
        };

        inline std::string num(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.2f", v);
            return buf;
        }

        inline std::string tick(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3g", v);
            return buf;
        }

        inline std::string escape(const std::string &s)
        {
            std::string o;
            for (char c : s)
            {
                switch (c)
                {
                case '&': o += "&amp;"; break;
                case '<': o += "&lt;"; break;
                case '>': o += "&gt;"; break;
                case '"': o += "&quot;"; break;
                default: o += c;
                }
            }
            return o;
        }

        // One panel with axes, ticks, labels and a legend, placed at (x0, y0)
        inline std::string render_panel(const panel &p, double x0, double y0, double w, double h)
        {
            const double ml = 60, mr = 15, mt = 30, mb = 45;
            const double pw = w - ml - mr, ph = h - mt - mb;
            double xmin = 0, xmax = 1, ymin = 0, ymax = 0;
            bool first = true;
            for (const auto &s : p.lines)
                for (std::size_t i = 0; i < s.x.size(); ++i)
                {
                    if (!std::isfinite(s.y[i]))
                        continue;
                    if (first)
                    {
                        xmin = xmax = s.x[i];
                        first = false;
                    }
                    xmin = std::min(xmin, s.x[i]);
                    xmax = std::max(xmax, s.x[i]);
                    ymax = std::max(ymax, s.y[i]);
                    ymin = std::min(ymin, s.y[i]);
                }
            if (ymax <= ymin)
                ymax = ymin + 1.0;
            ymax *= 1.05;
            if (xmax <= xmin)
                xmax = xmin + 1.0;
            auto sx = [&](double v)
            { return x0 + ml + (v - xmin) / (xmax - xmin) * pw; };
            auto sy = [&](double v)
            { return y0 + mt + ph - (v - ymin) / (ymax - ymin) * ph; };

            std::string o;
            o += "<g>\n";
            o += "<rect x=\"" + num(x0 + ml) + "\" y=\"" + num(y0 + mt) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
                 "\" fill=\"none\" stroke=\"#000\"/>\n";
            o += "<text x=\"" + num(x0 + ml + pw / 2) + "\" y=\"" + num(y0 + 18) + "\" text-anchor=\"middle\" font-size=\"13\">" +
                 escape(p.title) + "</text>\n";
            o += "<text x=\"" + num(x0 + ml + pw / 2) + "\" y=\"" + num(y0 + h - 8) + "\" text-anchor=\"middle\" font-size=\"12\">" +
                 escape(p.x_label) + "</text>\n";
            o += "<text x=\"" + num(x0 + 14) + "\" y=\"" + num(y0 + mt + ph / 2) + "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 " +
                 num(x0 + 14) + " " + num(y0 + mt + ph / 2) + ")\">" + escape(p.y_label) + "</text>\n";
            for (int k = 0; k <= 4; ++k)
            {
                const double xv = xmin + (xmax - xmin) * k / 4.0, yv = ymin + (ymax - ymin) * k / 4.0;
                o += "<text x=\"" + num(sx(xv)) + "\" y=\"" + num(y0 + mt + ph + 15) + "\" text-anchor=\"middle\" font-size=\"10\">" +
                     tick(xv) + "</text>\n";
                o += "<text x=\"" + num(x0 + ml - 5) + "\" y=\"" + num(sy(yv) + 3) + "\" text-anchor=\"end\" font-size=\"10\">" +
                     tick(yv) + "</text>\n";
                o += "<line x1=\"" + num(x0 + ml) + "\" y1=\"" + num(sy(yv)) + "\" x2=\"" + num(x0 + ml + pw) + "\" y2=\"" + num(sy(yv)) +
                     "\" stroke=\"#ddd\"/>\n";
            }
            for (std::size_t li = 0; li < p.lines.size(); ++li)
            {
                const auto &s = p.lines[li];
                std::string pts;
                for (std::size_t i = 0; i < s.x.size(); ++i)
                    if (std::isfinite(s.y[i]))
                        pts += num(sx(s.x[i])) + "," + num(sy(s.y[i])) + " ";
                o += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"" +
                     (s.dashed ? " stroke-dasharray=\"6,3\"" : "") + " points=\"" + pts + "\"/>\n";
                const double ly = y0 + mt + 14 + 14 * static_cast<double>(li);
                o += "<line x1=\"" + num(x0 + ml + pw - 150) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(x0 + ml + pw - 130) +
                     "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + s.color + "\"" + (s.dashed ? " stroke-dasharray=\"6,3\"" : "") + "/>\n";
                o += "<text x=\"" + num(x0 + ml + pw - 125) + "\" y=\"" + num(ly) + "\" font-size=\"10\">" + escape(s.label) + "</text>\n";
            }
            o += "</g>\n";
            return o;
        }

        // Panels laid out row-major on a grid
        inline std::string render(const std::string &title, const std::vector<panel> &panels, std::size_t columns)
        {
            const double w = 480, h = 320, top = 30;
            const std::size_t rows = (panels.size() + columns - 1) / columns;
            const double total_w = w * static_cast<double>(columns), total_h = top + h * static_cast<double>(rows);
            std::string o = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
            o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(total_w) + "\" height=\"" + num(total_h) +
                 "\" viewBox=\"0 0 " + num(total_w) + " " + num(total_h) + "\" font-family=\"sans-serif\">\n";
            o += "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
            o += "<text x=\"" + num(total_w / 2) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">" + escape(title) + "</text>\n";
            for (std::size_t i = 0; i < panels.size(); ++i)
                o += render_panel(panels[i], w * static_cast<double>(i % columns), top + h * static_cast<double>(i / columns), w, h);
            o += "</svg>\n";
            return o;
        }

        inline double deg(double rad) { return rad * 180.0 / std::numbers::pi; }

        inline std::vector<double> to_deg(const std::vector<double> &r)
        {
            std::vector<double> d(r.size());
            std::transform(r.begin(), r.end(), d.begin(), deg);
            return d;
        }
    }

    // Uplink and downlink panels, one series per scheme
    inline std::string sweep_svg(const std::vector<sweep_result> &results, const std::string &title, preset_kind kind)
    {
        if (results.empty())
            fail(error_category::argument, "sweep_svg: no results");
        const bool rate_kind = kind == preset_kind::rate;
        svg::panel up{"Uplink", "uplink user angle [deg]", rate_kind ? "rate [bit/s/Hz]" : "normalized channel strength", {}};
        svg::panel down{"Downlink", "uplink user angle [deg]", rate_kind ? "rate [bit/s/Hz]" : "normalized channel strength", {}};
        for (const auto &r : results)
        {
            const bool rec = r.scheme == scheme_reciprocal;
            svg::series su{r.scheme, rec ? "#1f77b4" : "#d62728", {}, {}, rec};
            svg::series sd = su;
            for (const auto &row : r.rows)
            {
                su.x.push_back(svg::deg(row.phi_itu));
                sd.x.push_back(svg::deg(row.phi_itu));
                su.y.push_back(rate_kind ? row.r_u : row.p_u_norm);
                sd.y.push_back(rate_kind ? row.r_d : row.p_d_norm);
            }
            up.lines.push_back(std::move(su));
            down.lines.push_back(std::move(sd));
        }
        return svg::render(title, {up, down}, 2);
    }

    // Rows are uplink user positions, columns impinging / reflected patterns
    inline std::string beam_svg(const std::vector<beam_result> &results, const std::string &title)
    {
        if (results.empty())
            fail(error_category::argument, "beam_svg: no results");
        std::vector<double> positions;
        for (const auto &r : results)
            if (std::find(positions.begin(), positions.end(), r.phi_itu) == positions.end())
                positions.push_back(r.phi_itu);

        std::vector<svg::panel> panels;
        for (double pos : positions)
        {
            const std::string where = "uplink user at " + svg::tick(svg::deg(pos)) + " deg";
            svg::panel imp{"Impinging, " + where, "angle [deg]", "normalized power", {}};
            svg::panel ref{"Reflected, " + where, "angle [deg]", "normalized power", {}};
            for (const auto &r : results)
            {
                if (r.phi_itu != pos)
                    continue;
                const bool rec = r.scheme == scheme_reciprocal;
                const auto x = svg::to_deg(r.patterns.grid);
                imp.lines.push_back({r.scheme + " downlink", rec ? "#d62728" : "#ff7f0e", x, r.patterns.p_d_imp, rec});
                imp.lines.push_back({r.scheme + " uplink", rec ? "#1f77b4" : "#2ca02c", x, r.patterns.p_u_imp, rec});
                ref.lines.push_back({r.scheme + " downlink", rec ? "#d62728" : "#ff7f0e", x, r.patterns.p_d_ref, rec});
                ref.lines.push_back({r.scheme + " uplink", rec ? "#1f77b4" : "#2ca02c", x, r.patterns.p_u_ref, rec});
            }
            panels.push_back(std::move(imp));
            panels.push_back(std::move(ref));
        }
        return svg::render(title, panels, 2);
    }

    inline void emit_svg(const std::vector<sweep_result> &results, const std::filesystem::path &path,
                         const std::string &title = "Sweep", preset_kind kind = preset_kind::strength)
    {
        detail::write_file(path, sweep_svg(results, title, kind));
    }

    inline void emit_svg(const std::vector<beam_result> &results, const std::filesystem::path &path,
                         const std::string &title = "Beam patterns")
    {
        detail::write_file(path, beam_svg(results, title));
    }
}

#endif
