#include "exciton/report.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>
#include <limits>
#include <sstream>
#include <thread>

#include "exciton/format.hpp"
#include "json_out.hpp"

namespace exciton {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

Grid1D apply_policy(const Grid1D& automatic, const GridPolicy& p) {
    if (p.half_length < 0.0 || p.points < 0) throw DomainError("grid policy values must be positive");
    if (p.half_length == 0.0 && p.points == 0) return automatic;
    const double L = p.half_length > 0.0 ? p.half_length : automatic.half_length();
    const int n = p.points > 0 ? p.points
                               : static_cast<int>(std::ceil(L / automatic.spacing()));
    return Grid1D(L, n);
}

// value of the j-th entry with parity p, j counted from 0
template <class Level>
double nth_of_parity(const std::vector<Level>& v, Parity p, int j) {
    for (const auto& l : v)
        if (l.parity == p && j-- == 0) return l.energy;
    return nan;
}

RadiusRecord run_radius(double rv, int levels, const GridPolicy& policy, int mode_cut) {
    const Radius r(rv);
    const Grid1D g1 = grid_1d(r, policy), g2 = grid_2d(r, policy, levels);
    RadiusRecord rec{rv, g1, g2, hc_spectrum(r, levels), heff_spectrum(r, levels, g1),
                     full_spectrum_merged(r, mode_cut, g2, levels), {}};
    int seen[2] = {0, 0};
    for (std::size_t j = 0; j < rec.hc.size(); ++j) {
        const auto& c = rec.hc[j];
        const int s = seen[c.parity == Parity::Odd]++;
        LevelRow row{static_cast<int>(j) + 1, c.parity, c.energy, nth_of_parity(rec.heff, c.parity, s),
                     nth_of_parity(rec.full, c.parity, s), nan, nan, nan};
        row.gap_eff_c = std::abs(row.heff - row.hc);
        row.gap_full_eff = std::abs(row.full - row.heff);
        row.gap_full_c = std::abs(row.full - row.hc);
        rec.rows.push_back(row);
    }
    return rec;
}

std::vector<LevelVerdict> verdicts_for(const std::vector<RadiusRecord>& recs, int levels) {
    std::vector<LevelVerdict> out;
    for (int j = 0; j < levels; ++j) {
        std::vector<double> a, b, c;
        for (const auto& rec : recs) {
            if (j >= static_cast<int>(rec.rows.size())) continue;
            a.push_back(rec.rows[j].gap_eff_c);
            b.push_back(rec.rows[j].gap_full_eff);
            c.push_back(rec.rows[j].gap_full_c);
        }
        if (a.empty()) continue;
        out.push_back({j + 1, gap_trend(a), gap_trend(b), gap_trend(c)});
    }
    return out;
}

using detail::Json;

Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }
double denum(const Json& j) { return j.is_null() ? nan : j.get<double>(); }

Json grid_json(const Grid1D& g) { return Json{{"half_length", g.half_length()}, {"points", g.size()}}; }
Grid1D grid_from(const Json& j) { return Grid1D(j.at("half_length").get<double>(), j.at("points").get<int>()); }

}  // namespace

Grid1D grid_1d(Radius r, const GridPolicy& policy) { return apply_policy(default_grid(r), policy); }

Grid1D grid_2d(Radius r, const GridPolicy& policy, int levels) {
    return apply_policy(default_grid_2d(r, levels), policy);
}

std::string to_string(Trend t) {
    switch (t) {
        case Trend::NonIncreasing: return "non-increasing";
        case Trend::Increasing: return "increasing";
        default: return "n/a";
    }
}

Trend trend_from_string(const std::string& s) {
    if (s == "non-increasing") return Trend::NonIncreasing;
    if (s == "increasing") return Trend::Increasing;
    if (s == "n/a") return Trend::NotApplicable;
    throw DomainError("unknown trend '" + s + "'");
}

Trend gap_trend(const std::vector<double>& gaps) {
    std::vector<double> v;
    for (double g : gaps)
        if (!std::isnan(g)) v.push_back(g);
    if (v.size() < 2) return Trend::NotApplicable;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[i - 1]) return Trend::Increasing;
    return Trend::NonIncreasing;
}

SpectrumReport convergence_report(const std::vector<double>& r_values, int levels, const GridPolicy& policy,
                                  int mode_cut, int threads) {
    if (r_values.empty()) throw DomainError("convergence_report needs at least one radius");
    if (levels < 1) throw DomainError("levels must be >= 1");
    if (mode_cut < 0) throw DomainError("mode_cut must be >= 0");
    for (double r : r_values) Radius{r};
    for (std::size_t i = 1; i < r_values.size(); ++i)
        if (!(r_values[i] < r_values[i - 1])) throw DomainError("radii must be strictly descending");

    const std::size_t n = r_values.size();
    std::vector<RadiusRecord> recs;
    recs.reserve(n);
    std::vector<std::optional<RadiusRecord>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    unsigned workers = threads > 0 ? unsigned(threads) : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, n);
    auto work = [&](unsigned w) {
        for (std::size_t i = w; i < n; i += workers) {
            try {
                slots[i] = run_radius(r_values[i], levels, policy, mode_cut);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        recs.push_back(std::move(*slots[i]));
    }
    SpectrumReport rep{levels, mode_cut, std::move(recs), {}};
    rep.verdicts = verdicts_for(rep.records, levels);
    return rep;
}

std::string report_to_json(const SpectrumReport& rep) {
    Json root;
    root["levels"] = rep.levels;
    root["mode_cut"] = rep.mode_cut;
    Json radii = Json::array();
    for (const auto& rec : rep.records) {
        Json jr;
        jr["radius"] = rec.radius;
        jr["grid_1d"] = grid_json(rec.grid_1d);
        jr["grid_2d"] = grid_json(rec.grid_2d);
        Json hc = Json::array(), heff = Json::array(), full = Json::array(), rows = Json::array();
        for (const auto& l : rec.hc)
            hc.push_back(Json{{"k", l.k}, {"parity", to_string(l.parity)}, {"alpha", l.alpha}, {"energy", l.energy}});
        for (const auto& l : rec.heff) heff.push_back(Json{{"parity", to_string(l.parity)}, {"energy", l.energy}});
        for (const auto& l : rec.full) full.push_back(Json{{"parity", to_string(l.parity)}, {"energy", l.energy}});
        for (const auto& w : rec.rows)
            rows.push_back(Json{{"level", w.level},
                                {"parity", to_string(w.parity)},
                                {"hc_energy", num(w.hc)},
                                {"heff_energy", num(w.heff)},
                                {"full_energy", num(w.full)},
                                {"gap_eff_c", num(w.gap_eff_c)},
                                {"gap_full_eff", num(w.gap_full_eff)},
                                {"gap_full_c", num(w.gap_full_c)}});
        jr["hc"] = hc;
        jr["heff"] = heff;
        jr["full"] = full;
        jr["rows"] = rows;
        radii.push_back(jr);
    }
    root["radii"] = radii;
    Json verdicts = Json::array();
    for (const auto& v : rep.verdicts)
        verdicts.push_back(Json{{"level", v.level},
                                {"gap_eff_c", to_string(v.eff_c)},
                                {"gap_full_eff", to_string(v.full_eff)},
                                {"gap_full_c", to_string(v.full_c)}});
    root["verdicts"] = verdicts;
    return detail::dump_json(root);
}

SpectrumReport report_from_json(const std::string& text) {
    Json root;
    try {
        root = Json::parse(text);
    } catch (const Json::exception& e) {
        throw DomainError(std::string("report JSON: ") + e.what());
    }
    try {
        SpectrumReport rep{root.at("levels").get<int>(), root.at("mode_cut").get<int>(), {}, {}};
        for (const auto& jr : root.at("radii")) {
            RadiusRecord rec{jr.at("radius").get<double>(), grid_from(jr.at("grid_1d")), grid_from(jr.at("grid_2d")),
                             {}, {}, {}, {}};
            for (const auto& l : jr.at("hc"))
                rec.hc.push_back({l.at("k").get<int>(), parity_from_string(l.at("parity").get<std::string>()),
                                  l.at("alpha").get<double>(), l.at("energy").get<double>()});
            for (const auto& l : jr.at("heff"))
                rec.heff.push_back({l.at("energy").get<double>(), parity_from_string(l.at("parity").get<std::string>())});
            for (const auto& l : jr.at("full"))
                rec.full.push_back({l.at("energy").get<double>(), parity_from_string(l.at("parity").get<std::string>())});
            for (const auto& w : jr.at("rows"))
                rec.rows.push_back({w.at("level").get<int>(), parity_from_string(w.at("parity").get<std::string>()),
                                    denum(w.at("hc_energy")), denum(w.at("heff_energy")), denum(w.at("full_energy")),
                                    denum(w.at("gap_eff_c")), denum(w.at("gap_full_eff")),
                                    denum(w.at("gap_full_c"))});
            rep.records.push_back(std::move(rec));
        }
        for (const auto& v : root.at("verdicts"))
            rep.verdicts.push_back({v.at("level").get<int>(), trend_from_string(v.at("gap_eff_c").get<std::string>()),
                                    trend_from_string(v.at("gap_full_eff").get<std::string>()),
                                    trend_from_string(v.at("gap_full_c").get<std::string>())});
        return rep;
    } catch (const Json::exception& e) {
        throw DomainError(std::string("report JSON: ") + e.what());
    }
}

std::string report_to_csv(const SpectrumReport& rep) {
    std::ostringstream os;
    os << "radius,level,parity,hc_energy,heff_energy,full_energy,gap_eff_c,gap_full_eff,gap_full_c,"
          "trend_eff_c,trend_full_eff,trend_full_c\n";
    for (const auto& rec : rep.records) {
        for (const auto& w : rec.rows) {
            const LevelVerdict* v = nullptr;
            for (const auto& cand : rep.verdicts)
                if (cand.level == w.level) v = &cand;
            os << format_double(rec.radius) << ',' << w.level << ',' << to_string(w.parity) << ','
               << format_double(w.hc) << ',' << format_double(w.heff) << ',' << format_double(w.full) << ','
               << format_double(w.gap_eff_c) << ',' << format_double(w.gap_full_eff) << ','
               << format_double(w.gap_full_c) << ',' << to_string(v ? v->eff_c : Trend::NotApplicable) << ','
               << to_string(v ? v->full_eff : Trend::NotApplicable) << ','
               << to_string(v ? v->full_c : Trend::NotApplicable) << '\n';
        }
    }
    return os.str();
}

}  // namespace exciton
