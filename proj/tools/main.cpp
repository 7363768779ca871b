#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bergman_lab/criteria.hpp"
#include "bergman_lab/io.hpp"
#include "bergman_lab/toeplitz.hpp"
#include "bergman_lab/transforms.hpp"
#include "bergman_lab/verify.hpp"
#include "bergman_lab/weights.hpp"

namespace fs = std::filesystem;
using namespace bl;
using io::json;

namespace {

enum Exit { ok = 0, check_failed = 1, bad_config = 2, numerical = 3 };

struct Overrides {
    std::string config, weight, measure, out, criterion, reference, proxy;
    std::vector<double> p, q, t, r, s;
    std::optional<int> degree;
    std::optional<double> rmax, lattice_r, C, p0, h_power;
};

void add_options(CLI::App* sub, Overrides& o) {
    sub->add_option("--config", o.config, "JSON run configuration");
    sub->add_option("--weight", o.weight, "weight spec, e.g. constant, standard:1, power_one_minus_z:0.5, grid:w.csv");
    sub->add_option("--measure", o.measure, "measure spec, e.g. weighted_area, power_density:0.4, atomic:[[0,0,2]]");
    sub->add_option("--p", o.p, "p values (comma separated sweep)")->delimiter(',');
    sub->add_option("--q", o.q, "q values")->delimiter(',');
    sub->add_option("--t", o.t, "t values")->delimiter(',');
    sub->add_option("--r", o.r, "r values")->delimiter(',');
    sub->add_option("--s", o.s, "s values")->delimiter(',');
    sub->add_option("--degree", o.degree, "kernel degree N (0: default)");
    sub->add_option("--rmax", o.rmax, "R_max");
    sub->add_option("--lattice-r", o.lattice_r, "lattice radius for profile grids");
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--criterion", o.criterion,
                    "consistency, boundedness, compactness, qlp, carleson, vanishing_carleson, essential_norm");
    sub->add_option("--reference", o.reference, "qlp reference measure: u_dA or dA");
    sub->add_option("--proxy", o.proxy, "Schatten kernel proxy: diagonal or printed");
    sub->add_option("--C", o.C, "Schatten constant C");
    sub->add_option("--h-power", o.h_power, "Schatten h(x) = x^p");
    sub->add_option("--p0", o.p0, "B_p0 exponent for the Carleson (e) index");
}

io::RunConfig make_config(const Overrides& o) {
    io::RunConfig c = o.config.empty() ? io::RunConfig{} : io::load_config(o.config);
    if (!o.weight.empty()) c.weight = io::weight_spec(o.weight);
    if (!o.measure.empty()) c.measure = io::measure_spec(o.measure);
    if (!o.p.empty()) c.p = o.p;
    if (!o.q.empty()) c.q = o.q;
    if (!o.t.empty()) c.t = o.t;
    if (!o.r.empty()) c.r = o.r;
    if (!o.s.empty()) c.s = o.s;
    if (o.degree) c.degree = *o.degree;
    if (o.rmax) c.r_max = *o.rmax;
    if (o.lattice_r) c.lattice_r = *o.lattice_r;
    if (!o.out.empty()) c.out = o.out;
    if (!o.criterion.empty()) c.criterion = o.criterion;
    if (!o.reference.empty()) c.reference = o.reference;
    if (!o.proxy.empty()) c.proxy = o.proxy;
    if (o.C) c.C = *o.C;
    if (o.p0) c.p0 = *o.p0;
    if (o.h_power) c.h = {{"kind", "power"}, {"p", *o.h_power}};
    c.validate();
    return c;
}

struct Cell {
    double p = 2, q = 2, t = 2, r = 0.5, s = 1;
    io::RunConfig config;
    std::string hash;
    fs::path dir;
};

// Cross product over the sweeps a subcommand uses, in a fixed order.
std::vector<Cell> make_cells(const io::RunConfig& c, const std::string& sub, const std::string& uses) {
    auto pick = [&](char k, const std::vector<double>& v) { return uses.find(k) == std::string::npos ? std::vector<double>{v.front()} : v; };
    std::vector<Cell> cells;
    for (double p : pick('p', c.p))
        for (double q : pick('q', c.q))
            for (double t : pick('t', c.t))
                for (double r : pick('r', c.r))
                    for (double s : pick('s', c.s)) {
                        Cell cell{p, q, t, r, s, c, {}, {}};
                        cell.config.p = {p};
                        cell.config.q = {q};
                        cell.config.t = {t};
                        cell.config.r = {r};
                        cell.config.s = {s};
                        json key = cell.config.to_json();
                        key.erase("out");
                        cell.hash = io::config_hash(json{{"subcommand", sub}, {"config", key}});
                        cell.dir = fs::path(c.out) / sub / cell.hash;
                        cells.push_back(std::move(cell));
                    }
    return cells;
}

json cell_header(const Cell& cell, const std::string& sub) {
    json key = cell.config.to_json();
    key.erase("out");
    return {{"subcommand", sub}, {"config", key}};
}

void write_report(const Cell& cell, const std::string& sub, const std::string& file, const json& body) {
    json j = cell_header(cell, sub);
    for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
    io::write_json(cell.dir / file, io::stamp(j, cell.hash));
}

int degree_for(const io::RunConfig& c, const Weight& u) { return c.degree > 0 ? c.degree : default_degree(u); }

BoundaryLadder ladder_for(const io::RunConfig& c) { return boundary_ladder(c.ladder.rings, c.ladder.samples, c.ladder.rho0); }

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

std::string describe_cell(const Cell& cell, const std::string& uses) {
    std::string s;
    const std::pair<char, double> vals[] = {{'p', cell.p}, {'q', cell.q}, {'t', cell.t}, {'r', cell.r}, {'s', cell.s}};
    for (const auto& [k, v] : vals)
        if (uses.find(k) != std::string::npos) s += std::string(s.empty() ? "" : " ") + k + "=" + fmt(v);
    return s.empty() ? "-" : s;
}

using CellFn = std::function<std::string(const Cell&)>;

// Runs the cells on the worker pool; each writes only its own directory. The
// first failure (in cell order) is rethrown after all cells have finished.
void run_cells(const std::vector<Cell>& cells, const std::string& sub, const std::string& uses, const io::RunConfig& c,
               const CellFn& fn) {
    std::vector<std::string> lines(cells.size());
    std::vector<std::exception_ptr> errors(cells.size());
    parallel_for(cells.size(), [&](std::size_t i) {
        try {
            lines[i] = fn(cells[i]);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    });
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    json index = json::array();
    std::string text;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        index.push_back({{"hash", cells[i].hash}, {"cell", describe_cell(cells[i], uses)}, {"summary", lines[i]}});
        text += cells[i].hash + "  " + describe_cell(cells[i], uses) + "  " + lines[i] + "\n";
    }
    json key = c.to_json();
    key.erase("out");
    const std::string hash = io::config_hash(json{{"subcommand", sub}, {"config", key}});
    io::write_json(fs::path(c.out) / sub / "summary.json", io::stamp(json{{"subcommand", sub}, {"cells", index}}, hash));
    io::write_text(fs::path(c.out) / sub / "summary.txt", text);
    std::cout << sub << ": " << cells.size() << " cell(s) in " << (fs::path(c.out) / sub).string() << "\n" << text;
}

int cmd_lattice(const io::RunConfig& c) {
    const auto cells = make_cells(c, "lattice", "r");
    run_cells(cells, "lattice", "r", c, [&](const Cell& cell) {
        const Lattice L = build_lattice(cell.r, c.r_max);
        write_report(cell, "lattice", "lattice.json", {{"lattice", io::to_json(L)}});
        std::vector<PointValue> pts;
        for (DiscPoint a : L.points) pts.push_back({a, std::abs(a)});
        io::write_points_csv(cell.dir / "lattice.csv", pts);
        const LatticeCertificate& k = L.certificate;
        std::string line = std::to_string(L.points.size()) + " points, disjoint=" + (k.disjoint ? "yes" : "no") +
                           " covering=" + fmt(k.covering_fraction()) + " multiplicity=" + std::to_string(k.max_multiplicity) +
                           "/" + std::to_string(L.multiplicity_bound);
        io::write_text(cell.dir / "summary.txt", line + "\n");
        return line;
    });
    return ok;
}

int cmd_kernel(const io::RunConfig& c) {
    const Weight u = io::weight_from_json(c.weight, c.base_dir);
    const ModelPtr m = build_kernel_model(u, degree_for(c, u));
    const Lattice L = build_lattice(c.lattice_r, c.r_max);
    const auto cells = make_cells(c, "kernel", "r");
    run_cells(cells, "kernel", "r", c, [&](const Cell& cell) {
        const CriterionReport rep = kernel_estimate_report(*m, cell.r, L);
        write_report(cell, "kernel", "model.json", {{"model", io::model_dump(*m, c.weight)}});
        write_report(cell, "kernel", "estimates.json", {{"report", io::to_json(rep)}});
        io::write_points_csv(cell.dir / "diag_band.csv", rep.per_point);
        std::string line = "N=" + std::to_string(m->degree()) + " gram_residual=" + fmt(m->gram_residual()) +
                           " diag_band=[" + fmt(rep.values.at("diag_band_min")) + ", " + fmt(rep.values.at("diag_band_max")) + "]";
        io::write_text(cell.dir / "summary.txt", line + "\n");
        return line;
    });
    return ok;
}

int cmd_weights(const io::RunConfig& c) {
    const Weight u = io::weight_from_json(c.weight, c.base_dir);
    const BoundaryLadder ladder = ladder_for(c);
    const std::vector<DiscPoint> anchors = audit_grid(0.9, 64);
    const auto cells = make_cells(c, "weights", "pr");
    run_cells(cells, "weights", "pr", c, [&](const Cell& cell) {
        const WeightConstantReport b = bekolle_constant(u, cell.p, anchors, ladder);
        const WeightConstantReport cp = cp_constant(u, cell.p, cell.r, anchors, ladder);
        write_report(cell, "weights", "weights.json", {{"bekolle", io::to_json(b)}, {"cp", io::to_json(cp)}});
        io::write_trend_csv(cell.dir / "bekolle_trend.csv", b.trend);
        io::write_trend_csv(cell.dir / "cp_trend.csv", cp.trend);
        std::string line = "B_p=" + fmt(b.value) + " (" + verdict_name(classify_trend(b.trend)) + "), C_p=" + fmt(cp.value) +
                           " (" + verdict_name(classify_trend(cp.trend)) + ")";
        io::write_text(cell.dir / "summary.txt", line + "\n");
        return line;
    });
    return ok;
}

int cmd_berezin(const io::RunConfig& c) {
    const Weight u = io::weight_from_json(c.weight, c.base_dir);
    const DiscMeasure mu = io::measure_from_json(c.measure, u, c.base_dir);
    const ModelPtr m = build_kernel_model(u, degree_for(c, u));
    const Lattice L = build_lattice(c.lattice_r, c.r_max);
    const auto cells = make_cells(c, "berezin", "tr");
    run_cells(cells, "berezin", "tr", c, [&](const Cell& cell) {
        const TransformProfile tilde =
            cell.t == 2.0 ? berezin_profile(mu, *m, L.points) : t_berezin_profile(mu, *m, cell.t, L.points);
        const TransformProfile hat = average_profile(mu, u, cell.r, L.points);
        const CriterionReport cmp = comparability_report(mu, *m, cell.t, cell.r, L);
        io::write_profile_csv(cell.dir / "berezin.csv", tilde);
        io::write_profile_csv(cell.dir / "average.csv", hat);
        write_report(cell, "berezin", "berezin.json", {{"profile", io::to_json(tilde)}});
        write_report(cell, "berezin", "average.json", {{"profile", io::to_json(hat)}});
        write_report(cell, "berezin", "comparability.json", {{"report", io::to_json(cmp)}});
        std::string line = "lower_band=" + fmt(cmp.values.at("lower_band")) + " upper_ratio=" + fmt(cmp.values.at("upper_ratio"));
        io::write_text(cell.dir / "summary.txt", line + "\n");
        return line;
    });
    return ok;
}

int cmd_toeplitz(const io::RunConfig& c) {
    const Weight u = io::weight_from_json(c.weight, c.base_dir);
    const DiscMeasure mu = io::measure_from_json(c.measure, u, c.base_dir);
    const ModelPtr m = build_kernel_model(u, degree_for(c, u));
    const ToeplitzMatrix T = assemble(mu, m);
    const Spectrum sp = spectrum(T);
    const double trace = trace_identity_check(T, mu, *m);
    const BoundaryLadder ladder = ladder_for(c);
    const auto cells = make_cells(c, "toeplitz", "pqtr");
    run_cells(cells, "toeplitz", "pqtr", c, [&](const Cell& cell) {
        io::write_spectrum_csv(cell.dir / "spectrum.csv", sp);
        json body = {{"spectrum", io::to_json(sp)}, {"trace_residual", io::number(trace)}, {"diagonal_form", T.is_diagonal()}};
        std::string line = "lambda_1=" + fmt(sp.eigenvalues.front()) + " trace_residual=" + fmt(trace);
        const CriterionReport en = essential_norm_estimate(mu, *m, cell.p, cell.q, cell.t, cell.r, ladder);
        body["essential_norm"] = io::to_json(en);
        io::write_trend_csv(cell.dir / "essential_norm_trend.csv", en.ring_trend);
        line += " essential_norm~" + fmt(en.index_value);
        write_report(cell, "toeplitz", "toeplitz.json", body);
        if (T.size() <= 512) {
            std::string s = "m,n,re,im\n";
            for (int i = 0; i < T.size(); ++i)
                for (int j = 0; j < T.size(); ++j) {
                    const cplx v = T(i, j);
                    if (v != cplx(0.0)) s += std::to_string(i) + "," + std::to_string(j) + "," + fmt(v.real()) + "," + fmt(v.imag()) + "\n";
                }
            io::write_text(cell.dir / "matrix.csv", s);
        }
        io::write_text(cell.dir / "summary.txt", line + "\n");
        return line;
    });
    return ok;
}

int cmd_criteria(const io::RunConfig& c) {
    const Weight u = io::weight_from_json(c.weight, c.base_dir);
    const DiscMeasure mu = io::measure_from_json(c.measure, u, c.base_dir);
    const ModelPtr m = build_kernel_model(u, degree_for(c, u));
    const BoundaryLadder ladder = ladder_for(c);
    const Lattice L = build_lattice(c.lattice_r, c.r_max);
    const auto cells = make_cells(c, "criteria", "pqtrs");
    run_cells(cells, "criteria", "pqtrs", c, [&](const Cell& cell) {
        CriterionReport rep;
        const std::string& k = c.criterion;
        if (k == "consistency") {
            rep = theorem_consistency_report(mu, m, cell.p, cell.q, cell.t, cell.r, cell.s, ladder);
            const auto rows = consistency_rows(rep);
            io::write_consistency_csv(cell.dir / "consistency.csv", rows);
        } else if (k == "boundedness") {
            rep = boundedness_index(mu, *m, cell.p, cell.q, cell.t, cell.r, L.points, ladder);
        } else if (k == "compactness") {
            rep = compactness_index(mu, *m, cell.p, cell.q, cell.t, cell.r, ladder);
        } else if (k == "qlp") {
            QlpOptions opt;
            opt.reference = c.reference == "dA" ? Reference::dA : Reference::u_dA;
            rep = qlp_index(mu, *m, cell.p, cell.q, cell.t, cell.r, opt);
        } else if (k == "carleson") {
            rep = carleson_test(mu, u, cell.p, cell.q, cell.r, cell.s, c.p0, audit_grid(0.9, 64), &ladder);
        } else if (k == "vanishing_carleson") {
            rep = vanishing_carleson_test(mu, u, cell.p, cell.q, ladder);
        } else {
            rep = essential_norm_estimate(mu, *m, cell.p, cell.q, cell.t, cell.r, ladder);
        }
        write_report(cell, "criteria", k + ".json", {{"report", io::to_json(rep)}});
        io::write_trend_csv(cell.dir / "ring_trend.csv", rep.ring_trend);
        std::string line = k + ": " + verdict_name(rep.verdict) + " index=" + fmt(rep.index_value);
        if (rep.notes.count("matrix")) line += " [" + rep.notes.at("matrix") + "]";
        io::write_text(cell.dir / "summary.txt", line + "\n");
        return line;
    });
    return ok;
}

int cmd_schatten(const io::RunConfig& c) {
    const Weight u = io::weight_from_json(c.weight, c.base_dir);
    const DiscMeasure mu = io::measure_from_json(c.measure, u, c.base_dir);
    const int N = c.degree > 0 ? c.degree : (u.radial() ? 8000 : default_degree(u));
    const ModelPtr m = build_kernel_model(u, N);
    const SchattenFunction h = io::schatten_function(c.h);
    SchattenOptions opt;
    opt.r_max = c.r_max;
    const double gap = 1.0 - c.r_max;
    opt.sweep = {1.0 - 10.0 * gap, 1.0 - 5.0 * gap, 1.0 - 2.5 * gap, 1.0 - 1.25 * gap};
    opt.proxy = c.proxy == "printed" ? KernelProxy::printed : KernelProxy::diagonal;
    const CriterionReport member = schatten_membership(assemble(mu, m), h, c.C);
    const auto cells = make_cells(c, "schatten", "r");
    run_cells(cells, "schatten", "r", c, [&](const Cell& cell) {
        const CriterionReport integral = schatten_integral(mu, *m, h, c.C, cell.r, opt);
        write_report(cell, "schatten", "schatten.json", {{"integral", io::to_json(integral)}, {"membership", io::to_json(member)}});
        io::write_trend_csv(cell.dir / "integral_sweep.csv", integral.ring_trend);
        io::write_trend_csv(cell.dir / "membership_doubling.csv", member.ring_trend);
        std::string line = std::string("integral ") + verdict_name(integral.verdict) + " (" + fmt(integral.index_value) +
                           "), membership " + verdict_name(member.verdict) + " (" + fmt(member.index_value) + ")";
        io::write_text(cell.dir / "summary.txt", line + "\n");
        return line;
    });
    return ok;
}

int cmd_verify(const io::RunConfig& c) {
    const verify::Suite suite = verify::run_suite([](const std::string& line) { std::cerr << line << std::endl; });
    json key = c.to_json();
    key.erase("out");
    const std::string hash = io::config_hash(json{{"subcommand", "verify"}, {"config", key}});
    const fs::path dir = fs::path(c.out) / "verify" / hash;
    io::write_json(dir / "verify.json", io::stamp(verify::to_json(suite), hash));
    const std::string text = verify::summary(suite);
    io::write_text(dir / "summary.txt", text);
    std::cout << text;
    std::size_t passed = 0;
    for (const auto& cr : suite.criteria) passed += cr.passed() ? 1 : 0;
    std::cout << passed << "/" << suite.criteria.size() << " acceptance criteria passed; artifacts in " << dir.string() << "\n";
    return suite.all_passed() ? ok : check_failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for Toeplitz operators on weighted Bergman spaces"};
    app.require_subcommand(1);
    Overrides o;
    const std::pair<const char*, const char*> subs[] = {
        {"lattice", "build and certify r-lattices"},
        {"kernel", "build the kernel model and its estimate reports"},
        {"weights", "B_p / C_p constants along the boundary ladder"},
        {"berezin", "Berezin and averaging profiles with comparability bands"},
        {"toeplitz", "Toeplitz matrix, spectrum, trace identity, essential norm"},
        {"criteria", "boundedness/compactness indices or the theorem consistency matrix"},
        {"schatten", "Schatten integral and membership sums"},
        {"verify", "run the acceptance suite"},
    };
    for (const auto& [name, help] : subs) add_options(app.add_subcommand(name, help), o);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : bad_config;
    }
    try {
        const io::RunConfig c = make_config(o);
        const std::string name = app.get_subcommands().front()->get_name();
        if (name == "lattice") return cmd_lattice(c);
        if (name == "kernel") return cmd_kernel(c);
        if (name == "weights") return cmd_weights(c);
        if (name == "berezin") return cmd_berezin(c);
        if (name == "toeplitz") return cmd_toeplitz(c);
        if (name == "criteria") return cmd_criteria(c);
        if (name == "schatten") return cmd_schatten(c);
        return cmd_verify(c);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return bad_config;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return bad_config;
    } catch (const DegeneracyError& e) {
        std::cerr << "numerical degeneracy: " << e.what() << "\n";
        return numerical;
    } catch (const PrecisionError& e) {
        std::cerr << "precision failure: " << e.what() << "\n";
        return numerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return numerical;
    }
}
