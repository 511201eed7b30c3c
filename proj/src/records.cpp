#include "prophet/records.hpp"

#include <charconv>
#include <ostream>

namespace prophet {

namespace {

Json value_json(const RecordValue& v) {
    return std::visit([](auto x) { return Json(x); }, v);
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

}  // namespace

Json to_json(const SummaryStats& s) {
    return Json{{"count", s.count},   {"mean", s.mean},     {"std", s.std},
                {"min", s.min},       {"max", s.max},       {"median", s.median},
                {"q05", s.q05},       {"q95", s.q95},       {"ci95_halfwidth", s.ci95_halfwidth}};
}

Json to_json(const ExperimentConfig& c) {
    return Json{{"kind", to_string(c.kind)},
                {"n", c.n},
                {"trials", c.trials},
                {"c", c.c},
                {"beta", c.beta},
                {"c_lemma", c.c_lemma},
                {"master_seed", c.master_seed},
                {"samples", c.samples},
                {"inner_samples", c.inner_samples},
                {"strategy", to_string(c.strategy)}};
}

Json to_json(const TrialResult& r) {
    return Json{{"n", r.n},
                {"seed", r.seed},
                {"chosen_index", r.chosen_index},
                {"triggered", r.triggered},
                {"trigger_radius", r.trigger_radius},
                {"disk_hits", r.disk_hits},
                {"player_area", r.player_area},
                {"prophet_area", r.prophet_area},
                {"prophet_index", r.prophet_index},
                {"mean_area", r.mean_area}};
}

Json summary_json(const ExperimentReport& report) {
    Json stats = Json::object();
    for (const auto& [name, s] : report.stats) stats[name] = to_json(s);
    for (const auto& [name, v] : report.metrics) stats[name] = v;
    Json gates = Json::array();
    for (const auto& g : report.gates) {
        gates.push_back({{"name", g.name}, {"value", g.value}, {"threshold", g.threshold}, {"pass", g.pass}});
    }
    return Json{{"config", to_json(report.config)},
                {"stats", std::move(stats)},
                {"gates", std::move(gates)},
                {"warnings", report.warnings}};
}

Json diagram_json(const VoronoiDiagram& diagram) {
    Json sites = Json::array();
    for (const auto& s : diagram.sites) sites.push_back({s.x(), s.y()});
    Json cells = Json::array();
    for (const auto& cell : diagram.cells) {
        Json poly = Json::array();
        for (Eigen::Index k = 0; k < cell.polygon.cols(); ++k) {
            poly.push_back({cell.polygon(0, k), cell.polygon(1, k)});
        }
        cells.push_back({{"site", cell.site_index}, {"area", cell.area}, {"polygon", std::move(poly)}});
    }
    return Json{{"sites", std::move(sites)}, {"cells", std::move(cells)}};
}

void write_jsonl(std::ostream& out, const RecordTable& table) {
    for (const auto& row : table.rows) {
        Json obj = Json::object();
        for (std::size_t k = 0; k < table.columns.size(); ++k) obj[table.columns[k]] = value_json(row[k]);
        out << obj.dump() << '\n';
    }
}

void write_csv(std::ostream& out, const RecordTable& table) {
    for (std::size_t k = 0; k < table.columns.size(); ++k) {
        out << (k ? "," : "") << table.columns[k];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) out << ',';
            std::visit(
                [&](auto x) {
                    using T = decltype(x);
                    if constexpr (std::is_same_v<T, bool>) {
                        out << (x ? "true" : "false");
                    } else if constexpr (std::is_same_v<T, double>) {
                        out << format_double(x);
                    } else {
                        out << x;
                    }
                },
                row[k]);
        }
        out << '\n';
    }
}

}  // namespace prophet
