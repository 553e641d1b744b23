// horolab: distances, geodesics, horofunction estimates, ends, and holomorphic
// iteration on hyperbolic domains.  Exit codes: 0 ok, 1 verification failure,
// 2 bad input, 3 numeric failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "horolab/config.hpp"
#include "horolab/dynamics.hpp"
#include "horolab/ends.hpp"
#include "horolab/engine.hpp"
#include "horolab/error.hpp"
#include "horolab/geodesy.hpp"
#include "horolab/holomap.hpp"
#include "horolab/horofunction.hpp"
#include "horolab/suites.hpp"

namespace {

using namespace horolab;

RunConfig base_config(const std::string& config_path) {
    if (config_path.empty()) return RunConfig{};
    return load_run_config(config_path);
}

Domain pick_domain(const RunConfig& cfg, const std::string& domain_spec) {
    if (!domain_spec.empty()) return parse_domain_spec(domain_spec);
    return cfg.domain;
}

Point pick_pole(const Domain& domain, const std::string& pole_spec) {
    if (pole_spec.empty()) return domain.anchor();
    return parse_point_spec(pole_spec);
}

BoundaryTarget pick_target(const RunConfig& cfg, const std::string& target_spec) {
    if (!target_spec.empty()) return parse_target_spec(target_spec);
    if (cfg.target) return *cfg.target;
    throw input_error("no target given (flag --target or config \"target\")");
}

HolomorphicMap pick_map(const RunConfig& cfg, const std::string& map_spec) {
    if (!map_spec.empty()) return parse_map_spec(map_spec);
    if (cfg.map) return *cfg.map;
    throw input_error("no map given (flag --map or config \"map\")");
}

std::vector<ApproachStyle> pick_styles(const RunConfig& cfg,
                                       const std::vector<std::string>& style_specs) {
    std::vector<ApproachStyle> styles;
    for (const std::string& s : style_specs) styles.push_back(parse_style_spec(s));
    if (styles.empty()) styles = cfg.styles;
    if (styles.empty()) styles.push_back(ApproachStyle::radial());
    return styles;
}

// one sink for artifacts: --out writes a file, otherwise stdout
class Sink {
  public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw input_error("cannot open output file '" + path + "'");
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

void write_header(std::ostream& os, const char* what, const Domain& domain) {
    os << "# horolab " << what << "\n";
    os << "# domain: " << domain.describe() << "\n";
    os << "# normalization: curvature -4 (disk metric |dz|/(1-|z|^2))\n";
}

void write_point_row(std::ostream& os, const Point& p) {
    os << fmt::format("{:.12g},{:.12g}", p[0].real(), p[0].imag());
    if (p.dim() == 2) os << fmt::format(",{:.12g},{:.12g}", p[1].real(), p[1].imag());
}

const char* distinctness_name(Distinctness v) {
    switch (v) {
        case Distinctness::Identical: return "identical";
        case Distinctness::Distinct: return "distinct";
        case Distinctness::Indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

std::string target_text(const BoundaryTarget& t) {
    if (t.kind == BoundaryTarget::Kind::BoundaryPoint)
        return "point " + format_point(t.point);
    return fmt::format("end {} direction ({:.6g},{:.6g})", t.end_index,
                       t.direction.real(), t.direction.imag());
}

int run_dist(const std::string& config_path, const std::string& domain_spec,
             const std::string& from_spec, const std::string& to_spec, double tol,
             bool has_tol, bool show_interval) {
    RunConfig cfg = base_config(config_path);
    if (has_tol) cfg.chain.tol = tol;
    const DistanceEngine engine = DistanceEngine::make(pick_domain(cfg, domain_spec),
                                                       cfg.chain);
    const Point z = parse_point_spec(from_spec);
    const Point w = parse_point_spec(to_spec);
    if (show_interval) {
        const Interval iv = engine.distance_interval(z, w);
        fmt::print("{:.12g} {:.12g}\n", iv.lo, iv.hi);
    } else {
        fmt::print("{:.12g}\n", engine.distance(z, w));
    }
    return 0;
}

int run_geodesic(const std::string& config_path, const std::string& domain_spec,
                 const std::string& from_spec, const std::string& to_spec, int samples,
                 double eps, const std::string& out_path) {
    const RunConfig cfg = base_config(config_path);
    const DistanceEngine engine = DistanceEngine::make(pick_domain(cfg, domain_spec),
                                                       cfg.chain);
    const Point z = parse_point_spec(from_spec);
    const Point w = parse_point_spec(to_spec);
    const PathSample path = eps > 0.0 ? quasi_geodesic(engine, z, w, eps)
                                      : geodesic(engine, z, w, samples);

    Sink sink(out_path);
    std::ostream& os = sink.os();
    write_header(os, path.is_geodesic ? "geodesic" : "quasi-geodesic", engine.domain());
    os << fmt::format("# epsilon: {:.12g}\n", path.epsilon);
    os << fmt::format("# grid_pitch: {:.12g}\n", path.grid_pitch);
    os << (engine.domain().dimension() == 1 ? "t,re,im\n" : "t,re0,im0,re1,im1\n");
    for (std::size_t i = 0; i < path.points.size(); ++i) {
        os << fmt::format("{:.12g},", path.t[i]);
        write_point_row(os, path.points[i]);
        os << "\n";
    }
    return 0;
}

int run_horofun(const std::string& config_path, const std::string& domain_spec,
                const std::string& target_spec, const std::string& style_spec,
                const std::string& pole_spec, int terms,
                const std::vector<std::string>& at_specs, const std::string& out_path) {
    const RunConfig cfg = base_config(config_path);
    const Domain domain = pick_domain(cfg, domain_spec);
    const DistanceEngine engine = DistanceEngine::make(domain, cfg.chain);
    const BoundaryTarget target = pick_target(cfg, target_spec);
    const ApproachStyle style =
        style_spec.empty() ? ApproachStyle::radial() : parse_style_spec(style_spec);
    const int n_terms = terms > 0 ? terms : cfg.terms;

    const ApproachSequence seq = approach_sequence(domain, target, style, n_terms);
    const HorofunctionEstimate est =
        estimate_horofunction(engine, pick_pole(domain, pole_spec), seq);

    fmt::print("style: {}\n", style.label());
    fmt::print("terms: {}{}\n", est.seq.points.size(),
               est.seq.saturated ? " (saturated)" : "");
    fmt::print("converged: {}\n", est.converged ? "true" : "false");
    fmt::print("oscillation: {:.12g}\n", est.osc);
    for (const std::string& spec : at_specs) {
        const Point z = parse_point_spec(spec);
        fmt::print("h({}) = {:.12g}\n", spec, est.value_at(z));
    }
    if (!out_path.empty()) {
        Sink sink(out_path);
        std::ostream& os = sink.os();
        write_header(os, "horofunction", domain);
        os << fmt::format("# style: {}\n", style.label());
        os << fmt::format("# oscillation: {:.12g}\n", est.osc);
        os << (domain.dimension() == 1 ? "re,im,h\n" : "re0,im0,re1,im1,h\n");
        for (std::size_t i = 0; i < est.probes.size(); ++i) {
            write_point_row(os, est.probes[i]);
            os << fmt::format(",{:.12g}\n", est.values[i]);
        }
    }
    return 0;
}

int run_region(const std::string& config_path, const std::string& domain_spec,
               const std::string& target_spec, const std::vector<std::string>& style_specs,
               const std::string& pole_spec, double radius,
               const std::vector<std::string>& point_specs) {
    const RunConfig cfg = base_config(config_path);
    const Domain domain = pick_domain(cfg, domain_spec);
    const DistanceEngine engine = DistanceEngine::make(domain, cfg.chain);
    const BoundaryTarget target = pick_target(cfg, target_spec);
    const std::vector<ApproachStyle> styles = pick_styles(cfg, style_specs);
    const Point pole = pick_pole(domain, pole_spec);

    std::vector<Point> points;
    for (const std::string& s : point_specs) points.push_back(parse_point_spec(s));
    if (points.empty()) points = cfg.points;
    if (points.empty()) throw input_error("region: no points given");

    const std::vector<HorofunctionEstimate> family =
        family_estimates(engine, pole, target, styles, points);
    for (const Point& z : points) {
        const HorosphereReport hs = horosphere_membership(family, z, radius);
        fmt::print("{} big={} small={}\n", format_point(z), to_string(hs.in_big),
                   to_string(hs.in_small));
    }
    return 0;
}

int run_fibers(const std::string& config_path, const std::string& domain_spec,
               const std::string& target_spec, const std::vector<std::string>& style_specs,
               const std::string& pole_spec) {
    const RunConfig cfg = base_config(config_path);
    const Domain domain = pick_domain(cfg, domain_spec);
    const DistanceEngine engine = DistanceEngine::make(domain, cfg.chain);
    const BoundaryTarget target = pick_target(cfg, target_spec);
    const std::vector<ApproachStyle> styles = pick_styles(cfg, style_specs);
    if (styles.size() < 2) throw input_error("fibers: need at least two styles");

    const FiberSample fs =
        fiber_sample(engine, pick_pole(domain, pole_spec), target, styles);
    for (std::size_t i = 0; i < fs.estimates.size(); ++i)
        fmt::print("{}: {} osc={:.12g}\n", i, fs.estimates[i].seq.style.label(),
                   fs.estimates[i].osc);
    for (std::size_t i = 0; i < fs.estimates.size(); ++i)
        for (std::size_t j = i + 1; j < fs.estimates.size(); ++j)
            fmt::print("{} {} gap={:.12g} {}\n", i, j, fs.gaps[i][j],
                       distinctness_name(fs.verdicts[i][j]));
    return 0;
}

int run_ends(const std::string& config_path, const std::string& domain_spec,
             int max_level) {
    const RunConfig cfg = base_config(config_path);
    const Domain domain = pick_domain(cfg, domain_spec);
    const EndTree tree = build_end_tree(domain, max_level > 0 ? max_level : cfg.max_level);
    for (std::size_t i = 0; i < tree.levels().size(); ++i) {
        const int level = static_cast<int>(i) + 1;
        fmt::print("level {}: {} components (resolution {:.12g})\n", level,
                   tree.levels()[i].size(), tree.resolution(level));
    }
    fmt::print("ends: {}\n", tree.ends().size());
    for (std::size_t k = 0; k < tree.ends().size(); ++k) {
        const End& e = tree.ends()[k];
        std::string path;
        for (std::size_t j = 0; j < e.component_path.size(); ++j) {
            if (j) path += ">";
            path += std::to_string(e.component_path[j]);
        }
        fmt::print("end {}: direction ({:.6g},{:.6g}) path {}\n", k, e.direction.real(),
                   e.direction.imag(), path);
    }
    return 0;
}

int run_orbit(const std::string& config_path, const std::string& domain_spec,
              const std::string& map_spec, const std::string& seed_spec, int horizon,
              const std::string& out_path) {
    const RunConfig cfg = base_config(config_path);
    const Domain domain = pick_domain(cfg, domain_spec);
    const DistanceEngine engine = DistanceEngine::make(domain, cfg.chain);
    const HolomorphicMap f = pick_map(cfg, map_spec);

    const MapCertificate cert = certify_self_map(engine, f);
    if (!cert.ok) throw input_error("orbit: self-map certificate failed: " + cert.detail);

    const Point seed =
        seed_spec.empty() ? domain.anchor() : parse_point_spec(seed_spec);
    const OrbitRecord rec =
        iterate(engine, f, seed, horizon > 0 ? horizon : cfg.horizon);

    fmt::print("iterates: {}\n", rec.iterates.size());
    fmt::print("saturated: {}\n", rec.saturated ? "true" : "false");
    fmt::print("stabilized: {}\n", rec.stabilized ? "true" : "false");
    fmt::print("classification: {}\n", rec.classification);
    if (rec.limit.kind == LimitClass::Kind::Boundary ||
        rec.limit.kind == LimitClass::Kind::End)
        fmt::print("limit: {}\n", target_text(rec.limit.target));

    if (!out_path.empty()) {
        Sink sink(out_path);
        std::ostream& os = sink.os();
        write_header(os, "orbit", domain);
        os << fmt::format("# map: {}\n", f.describe());
        os << fmt::format("# horizon: {}\n", horizon > 0 ? horizon : cfg.horizon);
        os << (domain.dimension() == 1 ? "n,re,im,level,pole_distance\n"
                                       : "n,re0,im0,re1,im1,level,pole_distance\n");
        for (std::size_t n = 0; n < rec.iterates.size(); ++n) {
            os << n << ",";
            write_point_row(os, rec.iterates[n]);
            os << fmt::format(",{},{:.12g}\n", rec.exhaustion[n], rec.pole_distance[n]);
        }
    }
    return 0;
}

int run_denjoy_wolff(const std::string& config_path, const std::string& domain_spec,
                     const std::string& map_spec,
                     const std::vector<std::string>& seed_specs, int horizon) {
    const RunConfig cfg = base_config(config_path);
    const Domain domain = pick_domain(cfg, domain_spec);
    const DistanceEngine engine = DistanceEngine::make(domain, cfg.chain);
    const HolomorphicMap f = pick_map(cfg, map_spec);

    const MapCertificate cert = certify_self_map(engine, f);
    if (!cert.ok)
        throw input_error("denjoy-wolff: self-map certificate failed: " + cert.detail);

    std::vector<Point> seeds;
    for (const std::string& s : seed_specs) seeds.push_back(parse_point_spec(s));
    if (seeds.empty()) seeds = cfg.seeds;
    if (seeds.empty()) seeds.push_back(domain.anchor());

    const DenjoyWolffReport dw =
        denjoy_wolff(engine, f, seeds, horizon > 0 ? horizon : cfg.horizon);
    fmt::print("verdict: {}\n", to_string(dw.verdict));
    if (dw.verdict == DenjoyWolffReport::Verdict::BoundaryLimit)
        fmt::print("limit: {}\n", target_text(dw.y));
    for (std::size_t i = 0; i < dw.seed_outcomes.size(); ++i)
        fmt::print("seed {}: {}\n", i, dw.seed_outcomes[i]);
    fmt::print("final spread: {:.12g}\n", dw.final_spread);
    fmt::print("spread shrinks: {}\n", dw.spread_shrinks ? "true" : "false");
    return 0;
}

int run_verify(const std::string& suite, bool list_only) {
    if (list_only) {
        for (const std::string& n : suite_names()) fmt::print("{}\n", n);
        return 0;
    }
    const SuiteReport rep = run_suite(suite);
    std::size_t passed = 0;
    for (const SuiteCheck& c : rep.checks) {
        fmt::print("[{}] {}: {}\n", c.pass ? "PASS" : "FAIL", c.name, c.detail);
        if (c.pass) ++passed;
    }
    fmt::print("passed {}/{}\n", passed, rep.checks.size());
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for hyperbolic domains: Kobayashi distances,\n"
                 "horofunction estimates, ends, and holomorphic iteration"};
    app.require_subcommand(1);
    int exit_code = 0;

    // dist
    {
        auto* cmd = app.add_subcommand("dist", "Kobayashi distance between two points");
        auto config = std::make_shared<std::string>();
        auto domain = std::make_shared<std::string>();
        auto from = std::make_shared<std::string>();
        auto to = std::make_shared<std::string>();
        auto tol = std::make_shared<double>(0.0);
        auto interval = std::make_shared<bool>(false);
        cmd->add_option("--config", *config, "JSON run configuration");
        cmd->add_option("--domain", *domain, "domain descriptor");
        cmd->add_option("--from", *from, "first point")->required();
        cmd->add_option("--to", *to, "second point")->required();
        auto* tol_opt =
            cmd->add_option("--tol", *tol, "interval width target (grid engines)");
        cmd->add_flag("--interval", *interval, "print the certified interval lo hi");
        cmd->callback([=, &exit_code]() {
            exit_code = run_dist(*config, *domain, *from, *to, *tol,
                                 tol_opt->count() > 0, *interval);
        });
    }

    // geodesic
    {
        auto* cmd = app.add_subcommand("geodesic", "sample a geodesic or quasi-geodesic");
        auto config = std::make_shared<std::string>();
        auto domain = std::make_shared<std::string>();
        auto from = std::make_shared<std::string>();
        auto to = std::make_shared<std::string>();
        auto samples = std::make_shared<int>(16);
        auto eps = std::make_shared<double>(0.0);
        auto out = std::make_shared<std::string>();
        cmd->add_option("--config", *config, "JSON run configuration");
        cmd->add_option("--domain", *domain, "domain descriptor");
        cmd->add_option("--from", *from, "start point")->required();
        cmd->add_option("--to", *to, "end point")->required();
        cmd->add_option("--samples", *samples, "sample count (geodesic mode)");
        cmd->add_option("--eps", *eps, "quasi-geodesic slack; 0 means true geodesic");
        cmd->add_option("--out", *out, "write CSV here instead of stdout");
        cmd->callback([=, &exit_code]() {
            exit_code = run_geodesic(*config, *domain, *from, *to, *samples, *eps, *out);
        });
    }

    // horofun
    {
        auto* cmd = app.add_subcommand(
            "horofun", "estimate the horofunction along a boundary approach");
        auto config = std::make_shared<std::string>();
        auto domain = std::make_shared<std::string>();
        auto target = std::make_shared<std::string>();
        auto style = std::make_shared<std::string>();
        auto pole = std::make_shared<std::string>();
        auto terms = std::make_shared<int>(0);
        auto at = std::make_shared<std::vector<std::string>>();
        auto out = std::make_shared<std::string>();
        cmd->add_option("--config", *config, "JSON run configuration");
        cmd->add_option("--domain", *domain, "domain descriptor");
        cmd->add_option("--target", *target, "boundary target");
        cmd->add_option("--style", *style, "approach style (default radial)");
        cmd->add_option("--pole", *pole, "normalization pole (default anchor)");
        cmd->add_option("--terms", *terms, "sequence length");
        cmd->add_option("--at", *at, "evaluate h at this point (repeatable)");
        cmd->add_option("--out", *out, "write probe values as CSV");
        cmd->callback([=, &exit_code]() {
            exit_code = run_horofun(*config, *domain, *target, *style, *pole, *terms,
                                    *at, *out);
        });
    }

    // region
    {
        auto* cmd = app.add_subcommand(
            "region", "horoball membership verdicts for a list of points");
        auto config = std::make_shared<std::string>();
        auto domain = std::make_shared<std::string>();
        auto target = std::make_shared<std::string>();
        auto styles = std::make_shared<std::vector<std::string>>();
        auto pole = std::make_shared<std::string>();
        auto radius = std::make_shared<double>(1.0);
        auto points = std::make_shared<std::vector<std::string>>();
        cmd->add_option("--config", *config, "JSON run configuration");
        cmd->add_option("--domain", *domain, "domain descriptor");
        cmd->add_option("--target", *target, "boundary target");
        cmd->add_option("--style", *styles, "approach style (repeatable)");
        cmd->add_option("--pole", *pole, "normalization pole (default anchor)");
        cmd->add_option("--radius", *radius, "horoball radius R (level log(R)/2)");
        cmd->add_option("--point", *points, "query point (repeatable)");
        cmd->callback([=, &exit_code]() {
            exit_code =
                run_region(*config, *domain, *target, *styles, *pole, *radius, *points);
        });
    }

    // fibers
    {
        auto* cmd = app.add_subcommand(
            "fibers", "compare horofunction limits across approach styles");
        auto config = std::make_shared<std::string>();
        auto domain = std::make_shared<std::string>();
        auto target = std::make_shared<std::string>();
        auto styles = std::make_shared<std::vector<std::string>>();
        auto pole = std::make_shared<std::string>();
        cmd->add_option("--config", *config, "JSON run configuration");
        cmd->add_option("--domain", *domain, "domain descriptor");
        cmd->add_option("--target", *target, "boundary target");
        cmd->add_option("--style", *styles, "approach style (repeatable, need two)");
        cmd->add_option("--pole", *pole, "normalization pole (default anchor)");
        cmd->callback([=, &exit_code]() {
            exit_code = run_fibers(*config, *domain, *target, *styles, *pole);
        });
    }

    // ends
    {
        auto* cmd = app.add_subcommand("ends", "build and print the end tree");
        auto config = std::make_shared<std::string>();
        auto domain = std::make_shared<std::string>();
        auto max_level = std::make_shared<int>(0);
        cmd->add_option("--config", *config, "JSON run configuration");
        cmd->add_option("--domain", *domain, "domain descriptor");
        cmd->add_option("--max-level", *max_level, "deepest exhaustion level");
        cmd->callback([=, &exit_code]() {
            exit_code = run_ends(*config, *domain, *max_level);
        });
    }

    // orbit
    {
        auto* cmd = app.add_subcommand("orbit", "iterate a certified self-map");
        auto config = std::make_shared<std::string>();
        auto domain = std::make_shared<std::string>();
        auto map = std::make_shared<std::string>();
        auto seed = std::make_shared<std::string>();
        auto horizon = std::make_shared<int>(0);
        auto out = std::make_shared<std::string>();
        cmd->add_option("--config", *config, "JSON run configuration");
        cmd->add_option("--domain", *domain, "domain descriptor");
        cmd->add_option("--map", *map, "holomorphic map descriptor");
        cmd->add_option("--seed", *seed, "orbit seed (default anchor)");
        cmd->add_option("--horizon", *horizon, "iteration cap");
        cmd->add_option("--out", *out, "write the orbit as CSV");
        cmd->callback([=, &exit_code]() {
            exit_code = run_orbit(*config, *domain, *map, *seed, *horizon, *out);
        });
    }

    // denjoy-wolff
    {
        auto* cmd = app.add_subcommand(
            "denjoy-wolff", "common-limit experiment for a certified self-map");
        auto config = std::make_shared<std::string>();
        auto domain = std::make_shared<std::string>();
        auto map = std::make_shared<std::string>();
        auto seeds = std::make_shared<std::vector<std::string>>();
        auto horizon = std::make_shared<int>(0);
        cmd->add_option("--config", *config, "JSON run configuration");
        cmd->add_option("--domain", *domain, "domain descriptor");
        cmd->add_option("--map", *map, "holomorphic map descriptor");
        cmd->add_option("--seed", *seeds, "orbit seed (repeatable)");
        cmd->add_option("--horizon", *horizon, "iteration cap");
        cmd->callback([=, &exit_code]() {
            exit_code = run_denjoy_wolff(*config, *domain, *map, *seeds, *horizon);
        });
    }

    // verify
    {
        auto* cmd = app.add_subcommand("verify", "run a built-in verification suite");
        auto suite = std::make_shared<std::string>("all");
        auto list_only = std::make_shared<bool>(false);
        cmd->add_option("suite", *suite, "suite name (default all)");
        cmd->add_flag("--list", *list_only, "list suite names and exit");
        cmd->callback(
            [=, &exit_code]() { exit_code = run_verify(*suite, *list_only); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const horolab::input_error& e) {
        fmt::print(stderr, "input error: {}\n", e.what());
        return 2;
    } catch (const horolab::numeric_error& e) {
        fmt::print(stderr, "numeric error: {}\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 3;
    }
    return exit_code;
}
