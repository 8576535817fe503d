#pragma once

// CSV and JSON serialization of sweep, analytic and scaling results. Every
// float is written with 17 significant digits so a parse gives back the exact
// same double; output is plain "\n"-terminated text with no locale influence.

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dicke/crit.hpp"
#include "dicke/errors.hpp"
#include "dicke/model.hpp"

namespace dicke {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

inline const char* sweep_csv_header =
    "n_atoms,omega,omega0,lambda,sector,e0_per_atom_ed,gp_per_atom_ed,"
    "e0_per_atom_analytic,gp_per_atom_analytic";

// Rows come out sorted by (n_atoms, lambda) because sweep requires both the
// ladder and the grid strictly increasing.
inline void write_sweep_csv(std::ostream& os, const SweepResult& s) {
    os << sweep_csv_header << '\n';
    for (std::size_t li = 0; li < s.n_ladder.size(); ++li) {
        for (std::size_t gi = 0; gi < s.lambda_grid.size(); ++gi) {
            const EdSweepPoint& e = s.ed[li][gi];
            const AnalyticSweepPoint& a = s.analytic[gi];
            os << s.n_ladder[li] << ',' << fmt17(s.params.omega) << ','
               << fmt17(s.params.omega0) << ',' << fmt17(s.lambda_grid[gi]) << ',' << e.sector
               << ',' << fmt17(e.e0_per_atom) << ',' << fmt17(e.gp_per_atom) << ','
               << fmt17(a.e0_per_atom) << ',' << fmt17(a.gp_per_atom) << '\n';
        }
    }
}

inline nlohmann::json sweep_to_json(const SweepResult& s) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t li = 0; li < s.n_ladder.size(); ++li) {
        for (std::size_t gi = 0; gi < s.lambda_grid.size(); ++gi) {
            const EdSweepPoint& e = s.ed[li][gi];
            const AnalyticSweepPoint& a = s.analytic[gi];
            rows.push_back({{"n_atoms", s.n_ladder[li]},
                            {"omega", s.params.omega},
                            {"omega0", s.params.omega0},
                            {"lambda", s.lambda_grid[gi]},
                            {"sector", e.sector},
                            {"e0_per_atom_ed", e.e0_per_atom},
                            {"gp_per_atom_ed", e.gp_per_atom},
                            {"e0_per_atom_analytic", a.e0_per_atom},
                            {"gp_per_atom_analytic", a.gp_per_atom}});
        }
    }
    return nlohmann::json{{"omega", s.params.omega},
                          {"omega0", s.params.omega0},
                          {"lambda_c", critical_coupling(s.params)},
                          {"n_ladder", s.n_ladder},
                          {"lambda_grid", s.lambda_grid},
                          {"rows", std::move(rows)}};
}

struct AnalyticRow {
    double lambda;
    double alpha;
    double beta;
    double e0_per_atom;
    double gp_per_atom;
    double gp_slope; // right derivative; jumps at lambda_c
};

inline std::vector<AnalyticRow> analytic_table(const ModelParams& p,
                                               const std::vector<double>& grid) {
    std::vector<AnalyticRow> rows;
    rows.reserve(grid.size());
    for (double lambda : grid) {
        const MeanFieldSolution mf = mean_field(p, lambda);
        rows.push_back(AnalyticRow{lambda, mf.alpha, mf.beta, ground_energy_per_atom(p, lambda),
                                   gp_per_atom(p, lambda), gp_slope_per_atom(p, lambda)});
    }
    return rows;
}

inline void write_analytic_csv(std::ostream& os, const ModelParams& p,
                               const std::vector<AnalyticRow>& rows) {
    const double lc = critical_coupling(p);
    os << "# omega=" << fmt17(p.omega) << " omega0=" << fmt17(p.omega0)
       << " lambda_c=" << fmt17(lc) << '\n';
    os << "lambda,lambda_c,alpha,beta,e0_per_atom,gp_per_atom,gp_slope\n";
    for (const AnalyticRow& r : rows)
        os << fmt17(r.lambda) << ',' << fmt17(lc) << ',' << fmt17(r.alpha) << ','
           << fmt17(r.beta) << ',' << fmt17(r.e0_per_atom) << ',' << fmt17(r.gp_per_atom) << ','
           << fmt17(r.gp_slope) << '\n';
}

inline nlohmann::json analytic_to_json(const ModelParams& p,
                                       const std::vector<AnalyticRow>& rows) {
    const double lc = critical_coupling(p);
    nlohmann::json jrows = nlohmann::json::array();
    for (const AnalyticRow& r : rows)
        jrows.push_back({{"lambda", r.lambda},
                         {"lambda_c", lc},
                         {"alpha", r.alpha},
                         {"beta", r.beta},
                         {"e0_per_atom", r.e0_per_atom},
                         {"gp_per_atom", r.gp_per_atom},
                         {"gp_slope", r.gp_slope}});
    return nlohmann::json{
        {"omega", p.omega}, {"omega0", p.omega0}, {"lambda_c", lc}, {"rows", std::move(jrows)}};
}

inline nlohmann::json scaling_to_json(const ModelParams& p, const ScalingFit& f) {
    const double target = gp_slope_at_critical(p);
    return nlohmann::json{{"omega", p.omega},
                          {"omega0", p.omega0},
                          {"lambda_c", critical_coupling(p)},
                          {"n_ladder", f.n_ladder},
                          {"peak_slopes", f.peak_slopes},
                          {"slope", f.slope},
                          {"intercept", f.intercept},
                          {"r_squared", f.r_squared},
                          {"target_slope", target},
                          {"relative_deviation", std::abs(f.slope - target) / target}};
}

inline ScalingFit scaling_from_json(const nlohmann::json& j) {
    ScalingFit f;
    f.n_ladder = j.at("n_ladder").get<std::vector<std::size_t>>();
    f.peak_slopes = j.at("peak_slopes").get<std::vector<double>>();
    f.slope = j.at("slope").get<double>();
    f.intercept = j.at("intercept").get<double>();
    f.r_squared = j.at("r_squared").get<double>();
    return f;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline double parse_double(const std::string& s) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw IoError("malformed number in table: '" + s + "'");
    return v;
}

inline long long parse_int(const std::string& s) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const long long v = std::strtoll(begin, &end, 10);
    if (end == begin || *end != '\0')
        throw IoError("malformed integer in table: '" + s + "'");
    return v;
}

} // namespace detail

struct SweepRow {
    long long n_atoms;
    double omega;
    double omega0;
    double lambda;
    long long sector;
    double e0_per_atom_ed;
    double gp_per_atom_ed;
    double e0_per_atom_analytic;
    double gp_per_atom_analytic;
};

inline std::vector<SweepRow> read_sweep_csv(std::istream& is) {
    std::string line;
    bool header_seen = false;
    std::vector<SweepRow> rows;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != sweep_csv_header)
                throw IoError("unexpected sweep table header: '" + line + "'");
            header_seen = true;
            continue;
        }
        const std::vector<std::string> f = detail::split_csv_line(line);
        if (f.size() != 9)
            throw IoError("sweep table row has " + std::to_string(f.size())
                          + " fields, expected 9");
        rows.push_back(SweepRow{detail::parse_int(f[0]), detail::parse_double(f[1]),
                                detail::parse_double(f[2]), detail::parse_double(f[3]),
                                detail::parse_int(f[4]), detail::parse_double(f[5]),
                                detail::parse_double(f[6]), detail::parse_double(f[7]),
                                detail::parse_double(f[8])});
    }
    if (!header_seen)
        throw IoError("sweep table has no header row");
    return rows;
}

} // namespace dicke
