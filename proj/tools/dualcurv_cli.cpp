// Command-line front end: parse body specification files, run measure /
// ratio / scc / cyl-sweep / lemma / bm computations, and emit one JSON object
// or CSV table per run. Exit codes: 0 success, 1 error, 2 a concentration
// bound Violation verdict (so CI can gate on it).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dualcurv/dualcurv.hpp"

namespace {

using namespace dualcurv;
using nlohmann::ordered_json;

std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct OutputOptions {
    std::string format = "json";
    std::string out_path;
};

void emit(const std::string& text, const OutputOptions& opt) {
    if (opt.out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + opt.out_path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

std::string render_json(const ordered_json& j) { return j.dump(2) + "\n"; }

// CSV table with a fixed header; numbers rendered with %.12g.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string render() const {
        std::string text;
        for (size_t i = 0; i < header.size(); ++i) text += (i ? "," : "") + header[i];
        text += '\n';
        for (const auto& row : rows) {
            for (size_t i = 0; i < row.size(); ++i) text += (i ? "," : "") + row[i];
            text += '\n';
        }
        return text;
    }
};

std::vector<double> parse_number_list(const std::string& text, const char* flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t pos = 0;
            double v = std::stod(item, &pos);
            while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ValidationError(std::string(flag) + ": cannot parse number `" + item + "`");
        }
    }
    if (out.empty()) throw ValidationError(std::string(flag) + ": empty list");
    return out;
}

// "--subspace v1;v2" with comma-separated components per vector.
Subspace parse_subspace(const std::string& text, int expected_dim) {
    std::vector<Vec> vectors;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
        if (part.empty()) continue;
        vectors.push_back(Vec::from(parse_number_list(part, "--subspace")));
    }
    if (vectors.empty()) throw ValidationError("--subspace: no vectors given");
    for (const Vec& v : vectors) {
        if (v.size() != expected_dim) {
            throw ValidationError("--subspace: vector dimension " + std::to_string(v.size()) +
                                  " does not match body dimension " + std::to_string(expected_dim));
        }
    }
    return make_subspace(vectors);
}

const SymmetricBody& require_symmetric(const ParsedBody& body, const char* command) {
    if (const auto* b = std::get_if<SymmetricBody>(&body)) return *b;
    throw ValidationError(std::string(command) +
                          " requires a symmetric body (ball, ellipsoid, polytope_h or cylinder)");
}

const GeneralPolytopeV& require_vertex_polytope(const ParsedBody& body, const char* command) {
    if (const auto* b = std::get_if<GeneralPolytopeV>(&body)) return *b;
    throw ValidationError(std::string(command) + " requires a polytope_v body");
}

void check_samples(std::int64_t samples) {
    if (samples < 1000) throw ValidationError("--samples must be at least 1000");
}

struct CommonFlags {
    std::string body_path;
    std::int64_t samples = 1'000'000;
    std::uint64_t seed = 0;
    double rel_tol = 1e-6;
    OutputOptions output;
};

QuadratureSpec make_spec(const CommonFlags& flags) {
    QuadratureSpec spec;
    spec.samples = flags.samples;
    spec.seed = flags.seed;
    spec.rel_tol = flags.rel_tol;
    return spec;
}

int run_measure(const CommonFlags& flags, double q, const std::string& subspace_text,
                bool complement, const std::string& gauge_path) {
    check_samples(flags.samples);
    ParsedBody parsed = parse_body_file(flags.body_path);
    const SymmetricBody& body = require_symmetric(parsed, "measure");

    SphericalRegion region = SphericalRegion::full();
    if (!subspace_text.empty()) {
        Subspace L = parse_subspace(subspace_text, body.dim());
        region = complement ? SphericalRegion::complement_of(std::move(L))
                            : SphericalRegion::sphere_in(std::move(L));
    } else if (complement) {
        throw ValidationError("--complement requires --subspace");
    }

    DualCurvatureQuery query{body, q, std::move(region), {}, kDefaultTieTol};
    if (!gauge_path.empty()) {
        query.gauge = require_symmetric(parse_body_file(gauge_path), "gauge");
    }
    MeasureEstimate est = dual_curvature(query, make_spec(flags));

    if (flags.output.format == "csv") {
        CsvTable table;
        table.header = {"value", "std_err", "samples", "seed"};
        table.rows.push_back({fmt_g(est.value), fmt_g(est.std_err), std::to_string(est.samples),
                              std::to_string(est.seed)});
        emit(table.render(), flags.output);
    } else {
        ordered_json j;
        j["value"] = est.value;
        j["std_err"] = est.std_err;
        j["samples"] = est.samples;
        j["seed"] = est.seed;
        emit(render_json(j), flags.output);
    }
    return 0;
}

int run_ratio(const CommonFlags& flags, double q, const std::string& subspace_text,
              const std::string& gauge_path) {
    check_samples(flags.samples);
    ParsedBody parsed = parse_body_file(flags.body_path);
    const SymmetricBody& body = require_symmetric(parsed, "ratio");
    if (!(q > 0.0 && q <= body.dim())) throw ValidationError("ratio requires 0 < q <= n");
    Subspace L = parse_subspace(subspace_text, body.dim());
    std::optional<SymmetricBody> gauge;
    if (!gauge_path.empty()) {
        gauge = require_symmetric(parse_body_file(gauge_path), "gauge");
    }

    RatioReport report =
        concentration_ratio(body, q, L, make_spec(flags), gauge ? &*gauge : nullptr);

    if (flags.output.format == "csv") {
        CsvTable table;
        table.header = {"value", "std_err", "samples", "seed", "q", "dim_L", "bound", "margin",
                        "verdict"};
        table.rows.push_back({fmt_g(report.ratio), fmt_g(report.std_err),
                              std::to_string(flags.samples), std::to_string(flags.seed),
                              fmt_g(report.q), std::to_string(report.dim_L), fmt_g(report.bound),
                              fmt_g(report.margin), std::string(to_string(report.verdict))});
        emit(table.render(), flags.output);
    } else {
        ordered_json j;
        j["value"] = report.ratio;
        j["std_err"] = report.std_err;
        j["samples"] = flags.samples;
        j["seed"] = flags.seed;
        j["q"] = report.q;
        j["dim_L"] = report.dim_L;
        j["bound"] = report.bound;
        j["margin"] = report.margin;
        j["verdict"] = std::string(to_string(report.verdict));
        emit(render_json(j), flags.output);
    }
    return report.verdict == Verdict::violation ? 2 : 0;
}

int run_scc(const CommonFlags& flags) {
    ParsedBody parsed = parse_body_file(flags.body_path);
    const SymmetricBody& body = require_symmetric(parsed, "scc");
    const auto* poly = std::get_if<PolytopeHBody>(&body.variant());
    if (!poly) throw ValidationError("scc requires a polytope_h body");
    SccReport report = check_scc_polytope(*poly);

    if (flags.output.format == "csv") {
        CsvTable table;
        table.header = {"dim", "mass", "ratio", "bound", "equality", "complement_ok", "violation"};
        for (const SccCandidate& c : report.candidates) {
            table.rows.push_back({std::to_string(c.dim), fmt_g(c.mass), fmt_g(c.ratio),
                                  fmt_g(c.bound), c.equality ? "1" : "0",
                                  c.complement_ok ? "1" : "0", c.violation ? "1" : "0"});
        }
        emit(table.render(), flags.output);
    } else {
        ordered_json j;
        j["holds"] = report.holds;
        j["total"] = report.total;
        auto rows = ordered_json::array();
        for (const SccCandidate& c : report.candidates) {
            ordered_json row;
            row["dim"] = c.dim;
            row["mass"] = c.mass;
            row["ratio"] = c.ratio;
            row["bound"] = c.bound;
            row["equality"] = c.equality;
            row["complement_ok"] = c.complement_ok;
            row["violation"] = c.violation;
            rows.push_back(std::move(row));
        }
        j["candidates"] = std::move(rows);
        emit(render_json(j), flags.output);
    }
    return report.holds ? 0 : 2;
}

int run_cyl_sweep(const CommonFlags& flags, int n, int k, double q, const std::string& r_text) {
    std::vector<double> r_list = parse_number_list(r_text, "--r-list");
    std::vector<CylinderSweepRow> rows = cylinder_sweep(n, k, q, r_list, make_spec(flags));

    if (flags.output.format == "json") {
        auto arr = ordered_json::array();
        for (const auto& row : rows) {
            ordered_json j;
            j["r"] = row.r;
            j["subspace"] = row.subspace_measure;
            j["total"] = row.total_measure;
            j["ratio"] = row.ratio;
            arr.push_back(std::move(j));
        }
        emit(render_json(arr), flags.output);
    } else {
        CsvTable table;
        table.header = {"r", "subspace", "total", "ratio"};
        for (const auto& row : rows) {
            table.rows.push_back({fmt_g(row.r), fmt_g(row.subspace_measure),
                                  fmt_g(row.total_measure), fmt_g(row.ratio)});
        }
        emit(table.render(), flags.output);
    }
    return 0;
}

int run_lemma(const CommonFlags& flags, double lambda, double p, const std::string& gauge_path) {
    check_samples(flags.samples);
    ParsedBody parsed = parse_body_file(flags.body_path);
    const GeneralPolytopeV& body = require_vertex_polytope(parsed, "lemma");
    std::optional<UnimodalFn> f;
    if (gauge_path.empty()) {
        f = UnimodalFn::power_radial(p, body.dim);
    } else {
        f = UnimodalFn::gauge_power(require_symmetric(parse_body_file(gauge_path), "gauge"), p);
    }
    LemmaReport report = lemma_check(body, lambda, *f, make_spec(flags));

    if (flags.output.format == "csv") {
        CsvTable table;
        table.header = {"lhs", "lhs_std_err", "rhs", "rhs_std_err", "sigma_combined", "pass"};
        table.rows.push_back({fmt_g(report.lhs.value), fmt_g(report.lhs.std_err),
                              fmt_g(report.rhs.value), fmt_g(report.rhs.std_err),
                              fmt_g(report.sigma_combined), report.pass ? "1" : "0"});
        emit(table.render(), flags.output);
    } else {
        ordered_json j;
        j["lhs"] = report.lhs.value;
        j["lhs_std_err"] = report.lhs.std_err;
        j["rhs"] = report.rhs.value;
        j["rhs_std_err"] = report.rhs.std_err;
        j["sigma_combined"] = report.sigma_combined;
        j["pass"] = report.pass;
        j["samples"] = flags.samples;
        j["seed"] = flags.seed;
        emit(render_json(j), flags.output);
    }
    return report.pass ? 0 : 2;
}

int run_bm(const CommonFlags& flags, const std::string& body2_path, double lambda) {
    check_samples(flags.samples);
    ParsedBody parsed0 = parse_body_file(flags.body_path);
    ParsedBody parsed1 = parse_body_file(body2_path);
    const GeneralPolytopeV& k0 = require_vertex_polytope(parsed0, "bm");
    const GeneralPolytopeV& k1 = require_vertex_polytope(parsed1, "bm");
    BrunnMinkowskiReport report = brunn_minkowski_check(k0, k1, lambda, make_spec(flags));

    if (flags.output.format == "csv") {
        CsvTable table;
        table.header = {"lhs", "rhs", "sigma_combined", "pass", "equality", "homothetic"};
        table.rows.push_back({fmt_g(report.lhs), fmt_g(report.rhs), fmt_g(report.sigma_combined),
                              report.pass ? "1" : "0", report.equality ? "1" : "0",
                              report.homothetic ? "1" : "0"});
        emit(table.render(), flags.output);
    } else {
        ordered_json j;
        j["lhs"] = report.lhs;
        j["rhs"] = report.rhs;
        j["sigma_combined"] = report.sigma_combined;
        j["pass"] = report.pass;
        j["equality"] = report.equality;
        j["homothetic"] = report.homothetic;
        j["samples"] = flags.samples;
        j["seed"] = flags.seed;
        emit(render_json(j), flags.output);
    }
    return report.pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dual curvature measures, cone volumes and subspace concentration ratios of "
                 "origin-symmetric convex bodies"};
    app.require_subcommand(1);

    CommonFlags flags;
    double q = 1.0;
    double lambda = 0.5;
    double p = -1.0;
    int cyl_n = 3, cyl_k = 1;
    std::string subspace_text, gauge_path, r_text, body2_path;
    bool complement = false;

    auto add_common = [&](CLI::App* cmd, bool with_body = true) {
        if (with_body) {
            cmd->add_option("--body", flags.body_path, "Body specification file")->required();
        }
        cmd->add_option("--samples", flags.samples, "Monte Carlo sample count");
        cmd->add_option("--seed", flags.seed, "Master random seed");
        cmd->add_option("--rel-tol", flags.rel_tol, "Relative tolerance of the grid quadrature");
        cmd->add_option("--format", flags.output.format, "Output format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--out", flags.output.out_path, "Write output to this file instead of stdout");
    };

    CLI::App* measure =
        app.add_subcommand("measure", "Dual curvature measure of a spherical region");
    add_common(measure);
    measure->add_option("--q", q, "Measure exponent q > 0")->required();
    measure->add_option("--subspace", subspace_text,
                        "Subspace basis `v1;v2;...` (components comma-separated)");
    measure->add_flag("--complement", complement, "Use the complement of the subspace sphere");
    measure->add_option("--gauge", gauge_path, "Gauge body specification file");

    CLI::App* ratio = app.add_subcommand("ratio", "Subspace concentration ratio and bound verdict");
    add_common(ratio);
    ratio->add_option("--q", q, "Measure exponent, 0 < q <= n")->required();
    ratio->add_option("--subspace", subspace_text, "Subspace basis `v1;v2;...`")->required();
    ratio->add_option("--gauge", gauge_path, "Gauge body specification file");

    CLI::App* scc = app.add_subcommand("scc", "Exact subspace concentration check for polytopes");
    add_common(scc);

    CLI::App* sweep = app.add_subcommand("cyl-sweep", "Cylinder ratio sweep over radii");
    add_common(sweep, /*with_body=*/false);
    sweep->add_option("--n", cyl_n, "Ambient dimension")->required();
    sweep->add_option("--k", cyl_k, "Lateral block dimension")->required();
    sweep->add_option("--q", q, "Measure exponent q > 0")->required();
    sweep->add_option("--r-list", r_text, "Comma-separated radii")->required();

    CLI::App* lemma =
        app.add_subcommand("lemma", "Unimodal integral comparison over a Minkowski combination");
    add_common(lemma);
    lemma->add_option("--lambda", lambda, "Combination weight in (0, 1)")->required();
    lemma->add_option("--p", p, "Exponent of the radial power, in (-n, 0)");
    lemma->add_option("--gauge", gauge_path, "Gauge body for the unimodal function");

    CLI::App* bm = app.add_subcommand("bm", "Brunn-Minkowski inequality check for two polytopes");
    add_common(bm);
    bm->add_option("--body2", body2_path, "Second body specification file")->required();
    bm->add_option("--lambda", lambda, "Combination weight in (0, 1)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (measure->parsed()) return run_measure(flags, q, subspace_text, complement, gauge_path);
        if (ratio->parsed()) return run_ratio(flags, q, subspace_text, gauge_path);
        if (scc->parsed()) return run_scc(flags);
        if (sweep->parsed()) return run_cyl_sweep(flags, cyl_n, cyl_k, q, r_text);
        if (lemma->parsed()) return run_lemma(flags, lambda, p, gauge_path);
        if (bm->parsed()) return run_bm(flags, body2_path, lambda);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
