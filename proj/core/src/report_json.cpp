#include <sstream>

#include <nlohmann/json.hpp>

#include "npspec/io.hpp"
#include "npspec/version.hpp"

namespace npspec::io {

using nlohmann::ordered_json;

namespace {

ordered_json estimate_json(const std::optional<spectra::Estimate>& e) {
    if (!e) return nullptr;
    return ordered_json{{"value", e->value}, {"uncertainty", e->uncertainty}};
}

ordered_json curve_json(const curves::SpectralCurve& c) {
    ordered_json j;
    j["alpha"] = c.alpha;
    j["beta"] = c.beta;
    auto samples = ordered_json::array();
    for (std::size_t i = 0; i < c.xi.size(); ++i)
        samples.push_back(
            ordered_json::array({c.xi[i], c.values[i].real(), c.values[i].imag()}));
    j["samples"] = std::move(samples);
    return j;
}

ordered_json region_json(const curves::RegionSet& r) {
    ordered_json j;
    switch (r.kind) {
        case curves::RegionSet::Kind::interval: j["kind"] = "interval"; break;
        case curves::RegionSet::Kind::curve_union: j["kind"] = "curve_union"; break;
        case curves::RegionSet::Kind::disk_union: j["kind"] = "disk_union"; break;
    }
    auto iv = ordered_json::array();
    for (const auto& [lo, hi] : r.intervals) iv.push_back(ordered_json::array({lo, hi}));
    j["intervals"] = std::move(iv);
    if (!r.curves.empty()) {
        auto cs = ordered_json::array();
        for (const auto& c : r.curves) cs.push_back(curve_json(c));
        j["curves"] = std::move(cs);
    }
    j["disk_radius"] = r.disk_radius ? ordered_json(*r.disk_radius) : ordered_json(nullptr);
    return j;
}

ordered_json report_json_body(const spectra::SpectrumReport& rep) {
    ordered_json j;
    j["space"] = rep.space == spectra::Space::energy ? "energy" : "weighted";
    j["alpha"] = rep.alpha ? ordered_json(*rep.alpha) : ordered_json(nullptr);
    j["angles"] = rep.angles;
    j["essential_core"] = region_json(rep.essential_core);
    auto ls = ordered_json::array();
    for (const auto& [lo, hi] : rep.lambda_star_intervals)
        ls.push_back(ordered_json::array({lo, hi}));
    j["lambda_star_intervals"] = std::move(ls);
    j["mu_plus"] = estimate_json(rep.mu_plus);
    j["mu_minus"] = estimate_json(rep.mu_minus);
    auto bs = ordered_json::array();
    for (const auto& b : rep.branches) {
        ordered_json bj;
        bj["alpha"] = b.alpha;
        auto samples = ordered_json::array();
        for (const auto& [xi, lam] : b.samples)
            samples.push_back(ordered_json::array({xi, lam}));
        bj["samples"] = std::move(samples);
        bj["terminated_mid_sweep"] = b.terminated_mid_sweep;
        if (!b.note.empty()) bj["note"] = b.note;
        bs.push_back(std::move(bj));
    }
    j["branches"] = std::move(bs);
    ordered_json pv = ordered_json::object();
    for (const auto& [vid, sub] : rep.per_vertex)
        pv[std::to_string(vid)] = report_json_body(sub);
    j["per_vertex"] = std::move(pv);
    j["skipped_xi_indices"] = rep.skipped_xi_indices;
    j["caveats"] = rep.caveats;
    return j;
}

} // namespace

std::string config_to_json(const RunConfig& cfg) {
    ordered_json j;
    j["subcommand"] = cfg.subcommand;
    j["space"] = cfg.space;
    j["alpha"] = cfg.alpha;
    j["beta"] = cfg.beta;
    j["xi"] = cfg.xi;
    j["a"] = cfg.a;
    j["kind"] = cfg.kind;
    j["xi_max"] = cfg.xi_max;
    j["xi_steps"] = cfg.xi_steps;
    j["panels"] = cfg.panels;
    j["order"] = cfg.order;
    j["grading"] = cfg.grading;
    j["input"] = cfg.input_path;
    j["seed"] = cfg.seed;
    return j.dump();
}

std::string report_to_json(const spectra::SpectrumReport& report,
                           const RunConfig& cfg) {
    ordered_json j;
    j["tool"] = {{"name", "npspec"}, {"version", npspec::version}};
    j["config"] = ordered_json::parse(config_to_json(cfg));
    j["report"] = report_json_body(report);
    return j.dump(2) + "\n";
}

std::string branches_csv(const spectra::SpectrumReport& report) {
    std::ostringstream out;
    out << "vertex_id,alpha,xi,lambda\n";
    auto emit = [&](int vid, const spectra::SpectrumReport& rep) {
        for (const auto& b : rep.branches)
            for (const auto& [xi, lam] : b.samples)
                out << vid << ',' << format_double(b.alpha) << ','
                    << format_double(xi) << ',' << format_double(lam) << '\n';
    };
    if (report.per_vertex.empty()) {
        emit(0, report);
    } else {
        for (const auto& [vid, sub] : report.per_vertex) emit(vid, sub);
    }
    return out.str();
}

std::string curve_csv(const curves::SpectralCurve& curve) {
    std::ostringstream out;
    out << "xi,re,im\n";
    for (std::size_t i = 0; i < curve.xi.size(); ++i)
        out << format_double(curve.xi[i]) << ','
            << format_double(curve.values[i].real()) << ','
            << format_double(curve.values[i].imag()) << '\n';
    return out.str();
}

} // namespace npspec::io
