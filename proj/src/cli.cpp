#include "tfcop/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tfcop/dependence.hpp"
#include "tfcop/families.hpp"
#include "tfcop/sampling.hpp"
#include "tfcop/suite.hpp"
#include "tfcop/transform.hpp"

namespace tfcop::cli {
namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

struct Options {
    std::string config_path;
    std::uint64_t seed = 42;
    std::size_t n = 10000;
    int grid = 200;
    std::string out;
    std::string svg;
    bool quick = false;
};

// ---- config parsing ---------------------------------------------------------

void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                    const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                ok = true;
                break;
            }
        if (!ok) throw std::invalid_argument("unknown key '" + it.key() + "' in " + where);
    }
}

MonotoneMap parse_map(const json& j, const std::string& where) {
    if (!j.is_object()) throw std::invalid_argument(where + " must be an object");
    if (!j.contains("kind")) throw std::invalid_argument(where + " needs a 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    auto need = [&](const char* key) {
        if (!j.contains(key))
            throw std::invalid_argument(where + ": kind '" + kind + "' needs '" + key + "'");
        return j.at(key).get<double>();
    };
    if (kind == "identity") {
        reject_unknown(j, {"kind"}, where);
        return MonotoneMap::identity();
    }
    if (kind == "power") {
        reject_unknown(j, {"kind", "beta"}, where);
        return MonotoneMap::power(need("beta"));
    }
    if (kind == "ca") {
        reject_unknown(j, {"kind", "beta", "gamma"}, where);
        return MonotoneMap::ca_shape(need("beta"), need("gamma"));
    }
    if (kind == "affine") {
        reject_unknown(j, {"kind", "alpha"}, where);
        return MonotoneMap::affine(need("alpha"));
    }
    if (kind == "exp-linear") {
        reject_unknown(j, {"kind", "c"}, where);
        return MonotoneMap::exp_linear(need("c"));
    }
    throw std::invalid_argument(where + ": unknown kind '" + kind + "'");
}

GeneratorPair preset_pair(const std::string& name) {
    if (name == "a") return {MonotoneMap::power(0.8), MonotoneMap::power(0.5)};
    if (name == "b") return {MonotoneMap::power(2.0 / 3.0), MonotoneMap::power(0.5)};
    if (name == "c") return {MonotoneMap::power(0.5), MonotoneMap::power(0.5)};
    if (name == "d") return {MonotoneMap::identity(), MonotoneMap::identity()};
    throw std::invalid_argument("unknown pair preset '" + name + "' (expected a, b, c or d)");
}

struct Job {
    CopulaPtr base;
    GeneratorPair pair{MonotoneMap::identity(), MonotoneMap::identity()};
    GateMode mode = GateMode::Conditions;
    json echo;
};

CopulaPtr parse_base(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("'base' must be an object");
    reject_unknown(j, {"family", "param"}, "base");
    if (!j.contains("family")) throw std::invalid_argument("'base' needs a 'family'");
    const Family f = family_from_name(j.at("family").get<std::string>());
    return make_family(f, j.value("param", 0.0));
}

Job parse_job(const json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("config root must be an object");
    reject_unknown(doc, {"base", "phi", "psi", "pair", "gate"}, "config");
    if (!doc.contains("base")) throw std::invalid_argument("config needs a 'base' object");
    Job job;
    job.base = parse_base(doc.at("base"));
    if (doc.contains("pair")) {
        if (doc.contains("phi") || doc.contains("psi"))
            throw std::invalid_argument("give either 'pair' or explicit 'phi'/'psi', not both");
        job.pair = preset_pair(doc.at("pair").get<std::string>());
    } else {
        if (doc.contains("phi")) job.pair.phi = parse_map(doc.at("phi"), "phi");
        if (doc.contains("psi")) job.pair.psi = parse_map(doc.at("psi"), "psi");
    }
    if (doc.contains("gate")) {
        const std::string g = doc.at("gate").get<std::string>();
        if (g == "conditions") job.mode = GateMode::Conditions;
        else if (g == "numeric") job.mode = GateMode::Numeric;
        else throw std::invalid_argument("gate must be 'conditions' or 'numeric'");
    }
    job.echo = doc;
    return job;
}

json load_config(const std::string& path) {
    if (path.empty()) throw std::invalid_argument("this command needs --config <file>");
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    return json::parse(in);
}

// ---- report plumbing --------------------------------------------------------

json grid_report_json(const GridCheckReport& r) {
    return json{{"check", r.check},
                {"grid", r.grid_size},
                {"tolerance", r.tolerance},
                {"worst_violation", r.worst_violation},
                {"worst_location", r.worst_location},
                {"passed", r.passed}};
}

json certificate_json(const ConditionCertificate& c) {
    json j;
    j["method"] = gate_method_name(c.method);
    j["base"] = c.base;
    j["phi_admissible"] = grid_report_json(c.phi_admissible);
    j["psi_admissible"] = grid_report_json(c.psi_admissible);
    if (c.order) j["order_condition"] = grid_report_json(*c.order);
    if (c.supermigrative) j["supermigrative"] = grid_report_json(*c.supermigrative);
    if (c.ratio) j["ratio_increasing"] = grid_report_json(*c.ratio);
    if (c.boundary) j["boundary"] = grid_report_json(*c.boundary);
    if (c.two_increasing) j["two_increasing"] = grid_report_json(*c.two_increasing);
    return j;
}

json tail_report_json(const TailReport& r) {
    json j;
    j["side"] = r.side == TailSide::Upper ? "upper" : "lower";
    j["lambda"] = r.lambda;
    j["eps"] = r.eps;
    j["quotients"] = r.quotients;
    j["converged"] = r.converged;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

json report_skeleton(const Job& job) {
    json rep;
    rep["tool"] = json{{"name", "tfcop"}, {"version", kVersion}};
    rep["config"] = job.echo;
    return rep;
}

void emit_report(const json& rep, const Options& o) {
    const std::string text = rep.dump(2) + "\n";
    if (o.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(o.out);
        if (!out) throw std::runtime_error("cannot open output file: " + o.out);
        out << text;
    }
}

std::string tail_case_name(TailCase t) {
    switch (t) {
        case TailCase::UpperB1: return "upper-matched-corner";
        case TailCase::UpperBaseZero: return "upper-base-tail-free";
        case TailCase::LowerB1: return "lower-matched-corner";
        case TailCase::LowerBaseZero: return "lower-base-tail-free";
    }
    return "unknown";
}

// Numeric estimate plus, when the detected corner behaviour matches one of
// the closed-form hypotheses, the analytic value.
json tail_side_json(const TransformedCopula& tf, TailSide side) {
    json j;
    const auto numeric = tail_lambda_numeric(tf, side);
    j["numeric"] = tail_report_json(numeric);
    try {
        const auto inputs = estimate_tail_inputs(tf.pair(), side);
        const auto base_rep = tail_lambda_numeric(tf.base(), side);
        const double closed = tail_lambda_transformed(base_rep.lambda, inputs);
        j["closed_form"] = json{{"case", tail_case_name(inputs.tag)},
                                {"alpha", inputs.alpha_exp},
                                {"a", inputs.a},
                                {"b", inputs.b},
                                {"base_lambda", base_rep.lambda},
                                {"lambda", closed}};
    } catch (const std::invalid_argument&) {
        // no closed-form case applies; the numeric estimate stands alone
    }
    return j;
}

// ---- SVG scatter --------------------------------------------------------------

void write_svg(const SampleBatch& b, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
           "viewBox=\"0 0 800 800\">\n";
    out << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    char buf[160];
    for (int pass = 0; pass < 2; ++pass) {
        const char* color = pass == 0 ? "#1f77b4" : "#d62728";
        for (std::size_t i = 0; i < b.size(); ++i) {
            if ((b.on_diagonal[i] != 0) != (pass == 1)) continue;
            const double x = b.u[i] * 800.0;
            const double y = (1.0 - b.v[i]) * 800.0;
            std::snprintf(buf, sizeof buf,
                          "<rect x=\"%.2f\" y=\"%.2f\" width=\"1\" height=\"1\" fill=\"%s\"/>\n",
                          x, y, color);
            out << buf;
        }
    }
    out << "</svg>\n";
}

// ---- commands -----------------------------------------------------------------

int cmd_validate(const Options& o) {
    const Job job = parse_job(load_config(o.config_path));
    json rep = report_skeleton(job);
    try {
        const auto tf = TransformedCopula::build(job.base, job.pair, job.mode, o.grid);
        rep["certified"] = true;
        rep["certificate"] = certificate_json(tf.certificate());
        emit_report(rep, o);
        return 0;
    } catch (const GateFailure& e) {
        rep["certified"] = false;
        rep["reason"] = e.what();
        rep["certificate"] = certificate_json(e.certificate());
        emit_report(rep, o);
        return 2;
    }
}

int cmd_sample(const Options& o) {
    const Job job = parse_job(load_config(o.config_path));
    if (o.out.empty()) throw std::invalid_argument("sample needs --out <csv>");
    const auto tf = TransformedCopula::build(job.base, job.pair, job.mode, o.grid);
    const auto batch = sample(tf, o.n, o.seed);
    std::ofstream csv(o.out);
    if (!csv) throw std::runtime_error("cannot open output file: " + o.out);
    write_csv(batch, csv);
    csv.close();
    if (!o.svg.empty()) write_svg(batch, o.svg);
    std::cerr << "wrote " << batch.size() << " draws to " << o.out
              << " (diagonal fraction " << batch.diagonal_fraction() << ")\n";
    return 0;
}

// Batch-means standard error: statistic recomputed on 10 disjoint blocks.
std::optional<double> batch_se(const SampleBatch& b, double (*stat)(const SampleBatch&)) {
    constexpr std::size_t kBlocks = 10;
    const std::size_t n = b.size();
    if (n < 10 * kBlocks) return std::nullopt;
    const std::size_t m = n / kBlocks;
    std::vector<double> vals;
    vals.reserve(kBlocks);
    for (std::size_t k = 0; k < kBlocks; ++k) {
        SampleBatch blk;
        blk.u.assign(b.u.begin() + k * m, b.u.begin() + (k + 1) * m);
        blk.v.assign(b.v.begin() + k * m, b.v.begin() + (k + 1) * m);
        blk.on_diagonal.assign(m, 0);
        vals.push_back(stat(blk));
    }
    double mean = 0.0;
    for (double x : vals) mean += x;
    mean /= vals.size();
    double ss = 0.0;
    for (double x : vals) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / (vals.size() * (vals.size() - 1.0)));
}

int cmd_measure(const Options& o) {
    const Job job = parse_job(load_config(o.config_path));
    const auto tf = TransformedCopula::build(job.base, job.pair, job.mode, o.grid);
    json rep = report_skeleton(job);
    rep["certificate"] = certificate_json(tf.certificate());

    const auto batch = sample(tf, o.n, o.seed);
    json rank;
    rank["n"] = batch.size();
    rank["seed"] = o.seed;
    rank["tau"] = kendall_tau(batch);
    rank["rho"] = spearman_rho(batch);
    if (auto se = batch_se(batch, kendall_tau)) rank["tau_se"] = *se;
    if (auto se = batch_se(batch, spearman_rho)) rank["rho_se"] = *se;
    rank["diagonal_fraction"] = batch.diagonal_fraction();
    rep["rank"] = rank;

    try {
        const auto dec = singular_mass(tf);
        json sing;
        sing["quadrature"] = dec.singular_mass;
        sing["ac_mass"] = dec.ac_mass;
        if (dec.closed_form) sing["closed_form"] = *dec.closed_form;
        rep["singular"] = sing;
    } catch (const std::domain_error& e) {
        rep["singular"] = json{{"note", e.what()}};
    }

    rep["tail"] = json{{"upper", tail_side_json(tf, TailSide::Upper)},
                       {"lower", tail_side_json(tf, TailSide::Lower)}};

    rep["grid_checks"] = json{{"boundary", grid_report_json(check_boundary(tf, o.grid))},
                              {"frechet", grid_report_json(check_frechet_bounds(tf, o.grid))},
                              {"two_increasing", grid_report_json(check_two_increasing(tf, o.grid))}};
    emit_report(rep, o);
    return 0;
}

int cmd_singular(const Options& o) {
    const Job job = parse_job(load_config(o.config_path));
    const auto tf = TransformedCopula::build(job.base, job.pair, job.mode, o.grid);
    const auto dec = singular_mass(tf);
    const auto support = singular_support_check(tf);
    json rep = report_skeleton(job);
    rep["singular_mass"] = json{{"quadrature", dec.singular_mass}, {"ac_mass", dec.ac_mass}};
    if (dec.closed_form) rep["singular_mass"]["closed_form"] = *dec.closed_form;
    rep["singular_mass"]["method"] =
        dec.method == MassMethod::ClosedForm ? "closed-form" : "quadrature";
    rep["jump_profile"] = dec.jump_profile;
    json sup;
    sup["n"] = support.n;
    sup["tolerance"] = support.tol;
    sup["min_excess"] = support.min_excess;
    sup["max_excess"] = support.max_excess;
    sup["nonempty"] = support.nonempty;
    sup["positive_everywhere"] = support.positive_everywhere;
    if (support.generator_criterion)
        sup["generator_criterion"] = grid_report_json(*support.generator_criterion);
    sup["methods_agree"] = support.methods_agree;
    rep["support"] = sup;
    emit_report(rep, o);
    return 0;
}

int cmd_taildep(const Options& o) {
    const Job job = parse_job(load_config(o.config_path));
    const auto tf = TransformedCopula::build(job.base, job.pair, job.mode, o.grid);
    json rep = report_skeleton(job);
    rep["upper"] = tail_side_json(tf, TailSide::Upper);
    rep["lower"] = tail_side_json(tf, TailSide::Lower);
    emit_report(rep, o);
    return 0;
}

int cmd_tp2(const Options& o) {
    const Job job = parse_job(load_config(o.config_path));
    const auto tf = TransformedCopula::build(job.base, job.pair, job.mode, o.grid);
    const auto check = tp2_check(tf, o.grid, 1e-12, o.seed);
    json rep = report_skeleton(job);
    rep["tp2"] = grid_report_json(check);
    emit_report(rep, o);
    return check.passed ? 0 : 2;
}

int cmd_concordance(const Options& o) {
    const json doc = load_config(o.config_path);
    if (!doc.is_object()) throw std::invalid_argument("config root must be an object");
    reject_unknown(doc, {"left", "right"}, "config");
    if (!doc.contains("left") || !doc.contains("right"))
        throw std::invalid_argument("concordance config needs 'left' and 'right' objects");
    const Job lj = parse_job(doc.at("left"));
    const Job rj = parse_job(doc.at("right"));
    const auto lc = TransformedCopula::build(lj.base, lj.pair, lj.mode, o.grid);
    const auto rc = TransformedCopula::build(rj.base, rj.pair, rj.mode, o.grid);
    const auto check = concordance_compare(lc, rc, o.grid);
    json rep;
    rep["tool"] = json{{"name", "tfcop"}, {"version", kVersion}};
    rep["config"] = doc;
    rep["order"] = grid_report_json(check);
    rep["ordered"] = check.passed;
    emit_report(rep, o);
    return check.passed ? 0 : 2;
}

int cmd_acceptance(const Options& o) {
    SuiteOptions so;
    so.seed = o.seed;
    so.n_rank = o.n;
    so.grid = o.grid;
    so.quick = o.quick;
    const auto results = run_acceptance(so);

    const std::string dir = o.out.empty() ? "acceptance" : o.out;
    std::filesystem::create_directories(dir);
    json summary;
    summary["tool"] = json{{"name", "tfcop"}, {"version", kVersion}};
    summary["seed"] = o.seed;
    summary["quick"] = o.quick;
    std::vector<int> failing;
    for (const auto& r : results) {
        json row;
        row["id"] = r.id;
        row["label"] = r.label;
        row["passed"] = r.passed;
        row["rows"] = r.rows;
        if (!r.note.empty()) row["note"] = r.note;
        std::ofstream out(dir + "/criterion-" + std::to_string(r.id) + ".json");
        out << row.dump(2) << "\n";
        summary["criteria"].push_back(json{{"id", r.id}, {"label", r.label}, {"passed", r.passed}});
        if (!r.passed) failing.push_back(r.id);
        std::printf("%-4s criterion %2d  %s\n", r.passed ? "ok" : "FAIL", r.id, r.label.c_str());
        for (const auto& line : r.rows) std::printf("       %s\n", line.c_str());
        if (!r.note.empty()) std::printf("       note: %s\n", r.note.c_str());
    }
    summary["all_passed"] = failing.empty();
    summary["failing"] = failing;
    std::ofstream out(dir + "/summary.json");
    out << summary.dump(2) << "\n";
    if (!failing.empty()) {
        std::printf("failing criteria:");
        for (int id : failing) std::printf(" %d", id);
        std::printf("\n");
        return 3;
    }
    std::printf("all criteria passed\n");
    return 0;
}

} // namespace

int run(int argc, char** argv) {
    CLI::App app{"transformed bivariate copulas with a diagonal singular component"};
    Options o;
    app.add_option("--config", o.config_path, "JSON job configuration");
    app.add_option("--seed", o.seed, "RNG seed")->capture_default_str();
    app.add_option("--n", o.n, "sample size")->capture_default_str();
    app.add_option("--grid", o.grid, "grid resolution for checks")->capture_default_str();
    app.add_option("--out", o.out, "output file (or directory for acceptance)");
    app.add_option("--svg", o.svg, "scatter SVG output path (sample only)");
    app.add_flag("--quick", o.quick, "smaller samples and grids, widened tolerances");
    app.require_subcommand(1);

    auto* validate = app.add_subcommand("validate", "certify a configuration");
    auto* sampler = app.add_subcommand("sample", "draw (u,v) pairs to CSV");
    auto* measure = app.add_subcommand("measure", "rank correlations, mass, tails");
    auto* singular = app.add_subcommand("singular", "diagonal mass decomposition");
    auto* taildep = app.add_subcommand("taildep", "tail dependence coefficients");
    auto* tp2 = app.add_subcommand("tp2", "total positivity grid check");
    auto* concord = app.add_subcommand("concordance", "compare two configurations");
    auto* suite = app.add_subcommand("acceptance", "run the full acceptance matrix");
    for (auto* sub : {validate, sampler, measure, singular, taildep, tp2, concord, suite})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const auto start = std::chrono::steady_clock::now();
    int rc = 1;
    try {
        if (validate->parsed()) rc = cmd_validate(o);
        else if (sampler->parsed()) rc = cmd_sample(o);
        else if (measure->parsed()) rc = cmd_measure(o);
        else if (singular->parsed()) rc = cmd_singular(o);
        else if (taildep->parsed()) rc = cmd_taildep(o);
        else if (tp2->parsed()) rc = cmd_tp2(o);
        else if (concord->parsed()) rc = cmd_concordance(o);
        else if (suite->parsed()) rc = cmd_acceptance(o);
    } catch (const GateFailure& e) {
        std::cerr << "not certified: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    std::cerr << "elapsed " << ms << " ms\n"; // kept off the report for byte-stable output
    return rc;
}

} // namespace tfcop::cli
