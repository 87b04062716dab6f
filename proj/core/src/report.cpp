#include "biasgauge/report.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace biasgauge {

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

namespace {

std::string ratio_text(const std::optional<double>& r) {
    if (!r) return "indeterminate";
    return format_double(*r);
}

std::string ceiled_text(const SampleSizeResult& n) {
    if (n.unbounded()) return "unbounded";
    return std::to_string(*n.ceiled);
}

nlohmann::json ratio_json(const std::optional<double>& r) {
    if (!r) return "indeterminate";
    if (std::isinf(*r)) return "inf";
    return *r;
}

nlohmann::json row_json(const MetricRow& row) {
    nlohmann::json j;
    j["algorithm"] = row.algorithm;
    j["e_low"] = row.e_low.value();
    j["e_high"] = row.e_high.value();
    j["swapped"] = row.swapped;
    j["d_err"] = row.d_err;
    j["d_err_pp"] = row.d_err * 100.0;
    j["r_err"] = ratio_json(row.r_err);
    if (row.n.unbounded()) {
        j["n_raw"] = "inf";
        j["n_ceiled"] = "unbounded";
    } else {
        j["n_raw"] = row.n.raw;
        j["n_ceiled"] = *row.n.ceiled;
    }
    return j;
}

}  // namespace

void write_sweep_csv(std::ostream& os, const SweepConfig& grid,
                     const TestParams& params) {
    if (grid.resolution < 2) throw std::invalid_argument("sweep resolution must be >= 2");
    if (!(grid.lo >= 0.0 && grid.lo < grid.hi && grid.hi <= 1.0)) {
        throw std::invalid_argument("sweep bounds require 0 <= lo < hi <= 1");
    }
    os << "e1,e2,d_err,r_err,n_raw,log_n\n";
    const double step = (grid.hi - grid.lo) / (grid.resolution - 1);
    for (int i = 0; i < grid.resolution; ++i) {
        double e1 = grid.lo + i * step;
        for (int j = 0; j < grid.resolution; ++j) {
            double e2 = grid.lo + j * step;
            MetricRow row = evaluate_row("", ErrorRate(e1), ErrorRate(e2), params);
            os << format_double(e1) << ',' << format_double(e2) << ','
               << format_double(row.d_err) << ',' << ratio_text(row.r_err) << ',';
            if (row.n.unbounded()) {
                os << "inf,inf";
            } else {
                os << format_double(row.n.raw) << ','
                   << format_double(std::log(row.n.raw));
            }
            os << '\n';
        }
    }
}

void write_compute_report(std::ostream& os, ErrorRate e1, ErrorRate e2,
                          const TestParams& params, OutputFormat format) {
    MetricRow row = evaluate_row("", e1, e2, params);
    switch (format) {
        case OutputFormat::text:
            os << "e1 = " << format_double(e1.value())
               << ", e2 = " << format_double(e2.value()) << "\n"
               << "alpha = " << format_double(params.alpha())
               << (params.sided() == Sided::one ? " (one-sided)" : " (two-sided)")
               << ", power = " << format_double(params.power()) << "\n"
               << "D_err = " << format_double(row.d_err) << " ("
               << format_double(row.d_err * 100.0) << " percent points)\n"
               << "R_err = " << ratio_text(row.r_err) << "\n";
            if (row.n.unbounded()) {
                os << "N_raw = inf\nN = unbounded\n";
            } else {
                os << "N_raw = " << format_double(row.n.raw) << "\n"
                   << "N = " << *row.n.ceiled << " (per group; total "
                   << format_double(row.n.total()) << ")\n";
            }
            break;
        case OutputFormat::csv:
            os << "e1,e2,d_err,d_err_pp,r_err,n_raw,n_ceiled,n_total\n"
               << format_double(e1.value()) << ',' << format_double(e2.value()) << ','
               << format_double(row.d_err) << ',' << format_double(row.d_err * 100.0)
               << ',' << ratio_text(row.r_err) << ','
               << (row.n.unbounded() ? "inf" : format_double(row.n.raw)) << ','
               << ceiled_text(row.n) << ','
               << (row.n.unbounded() ? "inf" : format_double(row.n.total())) << '\n';
            break;
        case OutputFormat::json: {
            nlohmann::json j = row_json(row);
            j.erase("algorithm");
            j["alpha"] = params.alpha();
            j["power"] = params.power();
            j["sided"] = params.sided() == Sided::one ? "one" : "two";
            os << j.dump(2) << '\n';
            break;
        }
    }
}

void write_rank_report(std::ostream& os, std::ostream& warn,
                       const DemographicDataset& ds, const TestParams& params,
                       OutputFormat format) {
    std::vector<RankTable> tables;
    std::vector<std::pair<std::string, std::string>> demo_pairs;
    for (const auto& block : ds.blocks) {
        if (block.demographics.size() != 2) {
            warn << "warning: skipping group '" << block.group << "' with "
                 << block.demographics.size() << " demographics (rank needs 2)\n";
            continue;
        }
        std::vector<MetricRow> rows;
        rows.reserve(block.algorithms.size());
        for (const auto& [alg, rates] : block.algorithms) {
            rows.push_back(evaluate_row(alg, rates[0], rates[1], params));
        }
        tables.push_back(make_rank_table(block.group, std::move(rows)));
        demo_pairs.emplace_back(block.demographics[0], block.demographics[1]);
    }

    switch (format) {
        case OutputFormat::text:
            for (std::size_t b = 0; b < tables.size(); ++b) {
                const RankTable& t = tables[b];
                os << "== " << t.group << " (" << demo_pairs[b].first << " vs "
                   << demo_pairs[b].second << ") ==\n";
                os << std::left << std::setw(12) << "algorithm" << std::setw(10)
                   << "e_low" << std::setw(10) << "e_high" << std::setw(10)
                   << "D_err%" << std::setw(10) << "R_err" << std::setw(12) << "N"
                   << std::setw(4) << "D" << std::setw(4) << "R" << std::setw(4)
                   << "N" << "\n";
                for (std::size_t i = 0; i < t.rows.size(); ++i) {
                    const MetricRow& row = t.rows[i];
                    std::ostringstream elo, ehi, dpp, rr;
                    elo << std::fixed << std::setprecision(4) << row.e_low.value();
                    ehi << std::fixed << std::setprecision(4) << row.e_high.value();
                    dpp << std::fixed << std::setprecision(2) << row.d_err * 100.0;
                    if (row.r_err && std::isfinite(*row.r_err)) {
                        rr << std::fixed << std::setprecision(2) << *row.r_err;
                    } else {
                        rr << ratio_text(row.r_err);
                    }
                    os << std::left << std::setw(12) << row.algorithm << std::setw(10)
                       << elo.str() << std::setw(10) << ehi.str() << std::setw(10)
                       << dpp.str() << std::setw(10) << rr.str() << std::setw(12)
                       << ceiled_text(row.n) << std::setw(4) << t.ranks_d[i]
                       << std::setw(4) << t.ranks_r[i] << std::setw(4)
                       << t.ranks_n[i] << "\n";
                }
                std::ostringstream tau;
                tau << std::fixed << std::setprecision(3)
                    << "rank agreement (Kendall tau-b): D~R="
                    << rank_agreement(t.ranks_d, t.ranks_r)
                    << " D~N=" << rank_agreement(t.ranks_d, t.ranks_n)
                    << " R~N=" << rank_agreement(t.ranks_r, t.ranks_n);
                os << tau.str() << "\n\n";
            }
            break;
        case OutputFormat::csv: {
            os << "group,algorithm,e_low,e_high,d_err,d_err_pp,r_err,n_raw,n_ceiled,"
                  "rank_d,rank_r,rank_n\n";
            for (const RankTable& t : tables) {
                for (std::size_t i = 0; i < t.rows.size(); ++i) {
                    const MetricRow& row = t.rows[i];
                    os << t.group << ',' << row.algorithm << ','
                       << format_double(row.e_low.value()) << ','
                       << format_double(row.e_high.value()) << ','
                       << format_double(row.d_err) << ','
                       << format_double(row.d_err * 100.0) << ','
                       << ratio_text(row.r_err) << ','
                       << (row.n.unbounded() ? "inf" : format_double(row.n.raw)) << ','
                       << ceiled_text(row.n) << ',' << t.ranks_d[i] << ','
                       << t.ranks_r[i] << ',' << t.ranks_n[i] << '\n';
                }
            }
            os << "\ngroup,agreement_d_r,agreement_d_n,agreement_r_n\n";
            for (const RankTable& t : tables) {
                os << t.group << ','
                   << format_double(rank_agreement(t.ranks_d, t.ranks_r)) << ','
                   << format_double(rank_agreement(t.ranks_d, t.ranks_n)) << ','
                   << format_double(rank_agreement(t.ranks_r, t.ranks_n)) << '\n';
            }
            break;
        }
        case OutputFormat::json: {
            nlohmann::json out = nlohmann::json::array();
            for (std::size_t b = 0; b < tables.size(); ++b) {
                const RankTable& t = tables[b];
                nlohmann::json jb;
                jb["group"] = t.group;
                jb["demographics"] = {demo_pairs[b].first, demo_pairs[b].second};
                jb["rows"] = nlohmann::json::array();
                for (std::size_t i = 0; i < t.rows.size(); ++i) {
                    nlohmann::json jr = row_json(t.rows[i]);
                    jr["rank_d"] = t.ranks_d[i];
                    jr["rank_r"] = t.ranks_r[i];
                    jr["rank_n"] = t.ranks_n[i];
                    jb["rows"].push_back(std::move(jr));
                }
                jb["agreement"] = {
                    {"d_r", rank_agreement(t.ranks_d, t.ranks_r)},
                    {"d_n", rank_agreement(t.ranks_d, t.ranks_n)},
                    {"r_n", rank_agreement(t.ranks_r, t.ranks_n)},
                };
                out.push_back(std::move(jb));
            }
            os << out.dump(2) << '\n';
            break;
        }
    }
}

}  // namespace biasgauge
