#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "quadel/branch_bound.hpp"
#include "quadel/config.hpp"
#include "quadel/control.hpp"
#include "quadel/fixtures.hpp"
#include "quadel/json_io.hpp"
#include "quadel/milp.hpp"
#include "quadel/pgm.hpp"
#include "quadel/route.hpp"
#include "quadel/simplex.hpp"
#include "quadel/speccheck.hpp"

namespace {

// Exit code contract: 0 success, 1 input error, 2 infeasible (or failed
// requirement check), 3 divergence, 4 oracle limits.
constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kInfeasible = 2;
constexpr int kDivergence = 3;
constexpr int kOracleLimit = 4;

using namespace quadel;

int cmd_plan(const std::string& instance_path, const std::string& out_path, bool cuts,
             double gap, std::size_t node_limit, const std::string& dump_path) {
    PdpInstance inst;
    try {
        inst = validate_instance(load_instance(instance_path));
    } catch (const std::exception& e) {
        std::cerr << "plan: instance: " << e.what() << "\n";
        return kInputError;
    }
    try {
        MilpModel model = build_model(inst, cuts);
        if (!dump_path.empty()) write_text_file(dump_path, dump_model(model));
        SolverTolerances tol;
        tol.gap = gap;
        tol.node_limit = node_limit;
        MipSolution mip = branch_and_bound(model, tol);
        if (mip.status == MipStatus::Infeasible) {
            std::cout << "infeasible (" << mip.node_count << " nodes)\n";
            return kInfeasible;
        }
        RoutePlan plan = extract_routes(inst, model.layout, mip);
        PlanReport report = validate_plan(inst, plan);
        if (!report.ok()) {
            std::cerr << "plan: extracted plan failed validation:\n";
            for (const auto& v : report.violations)
                std::cerr << "  [" << v.kind << "] " << v.message << "\n";
            return kInputError;
        }
        if (!out_path.empty()) save_plan(out_path, plan);
        std::printf("makespan %.9f\n", plan.makespan);
        std::printf("nodes %zu pivots %zu wall %.3fs\n", mip.node_count, mip.lp_pivots,
                    mip.wall_seconds);
        return kOk;
    } catch (const std::exception& e) {
        std::cerr << "plan: solve: " << e.what() << "\n";
        return kInputError;
    }
}

int cmd_oracle(const std::string& instance_path, const std::string& out_path,
               int max_legs) {
    PdpInstance inst;
    try {
        inst = validate_instance(load_instance(instance_path));
    } catch (const std::exception& e) {
        std::cerr << "oracle: instance: " << e.what() << "\n";
        return kInputError;
    }
    try {
        if (max_legs <= 0) max_legs = oracle_default_max_legs(inst);
        auto plan = brute_force_solve(inst, max_legs);
        if (!plan) {
            std::cout << "infeasible\n";
            return kInfeasible;
        }
        if (!out_path.empty()) save_plan(out_path, *plan);
        std::printf("makespan %.9f\n", plan->makespan);
        return kOk;
    } catch (const OracleLimitExceeded& e) {
        std::cerr << "oracle: " << e.what() << "\n";
        return kOracleLimit;
    } catch (const std::exception& e) {
        std::cerr << "oracle: " << e.what() << "\n";
        return kInputError;
    }
}

int cmd_fly(const std::string& plan_path, const std::string& out_path,
            const std::string& config_path, double dt, double capture_radius) {
    RoutePlan plan;
    QuadParams params;
    ControllerConfig cfg;
    try {
        plan = load_plan(plan_path);
        if (!config_path.empty()) {
            auto kv = load_key_values(config_path);
            params = quad_params_from_map(kv);
            cfg = controller_config_from_map(kv);
        } else {
            cfg = default_controller_config();
        }
    } catch (const std::exception& e) {
        std::cerr << "fly: input: " << e.what() << "\n";
        return kInputError;
    }
    try {
        if (capture_radius <= 0) capture_radius = cfg.capture_radius;
        auto trajectories = fly_route(plan, params, cfg, dt, capture_radius);
        namespace fs = std::filesystem;
        if (trajectories.empty()) {
            write_text_file(out_path, "t,x,y,z,vx,vy,vz,phi,theta,psi,wx,wy,wz,m1,m2,m3,m4\n");
            std::cout << "empty plan: wrote header-only " << out_path << "\n";
            return kOk;
        }
        for (size_t i = 0; i < trajectories.size(); ++i) {
            std::string path = out_path;
            if (trajectories.size() > 1) {
                fs::path p(out_path);
                std::string stem = p.stem().string() + ".q" + std::to_string(i);
                path = (p.parent_path() / (stem + p.extension().string())).string();
            }
            write_text_file(path, trajectory_to_csv(trajectories[i]));
            std::cout << "wrote " << path << " (" << trajectories[i].samples.size()
                      << " samples, " << (trajectories[i].completed ? "completed" : "time cap")
                      << ")\n";
        }
        return kOk;
    } catch (const DivergenceDetected& e) {
        std::cerr << "fly: " << e.what() << "\n";
        return kDivergence;
    } catch (const std::exception& e) {
        std::cerr << "fly: " << e.what() << "\n";
        return kInputError;
    }
}

int cmd_edges(const std::string& image_path, const std::string& out_path, double sigma,
              double t_low, double t_high, const std::string& dump_prefix) {
    try {
        GrayImage img = read_pgm(image_path);
        GrayImage smoothed = smooth(img, sigma);
        GradientField field = gradients(smoothed);
        Grid thinned = non_max_suppression(field);
        auto [lo, hi] = default_thresholds(thinned);
        if (t_high >= 0) hi = t_high;
        if (t_low >= 0) lo = t_low;
        if (lo > hi) {
            std::cerr << "edges: t-low must not exceed t-high\n";
            return kInputError;
        }
        Grid edges = hysteresis(thinned, lo, hi);
        write_pgm(out_path, edges);
        if (!dump_prefix.empty()) {
            write_pgm(dump_prefix + ".smooth.pgm", rescale_for_dump(smoothed));
            write_pgm(dump_prefix + ".magnitude.pgm", rescale_for_dump(field.magnitude));
            write_pgm(dump_prefix + ".nms.pgm", rescale_for_dump(thinned));
        }
        std::printf("thresholds low %.6f high %.6f\n", lo, hi);
        return kOk;
    } catch (const std::exception& e) {
        std::cerr << "edges: " << e.what() << "\n";
        return kInputError;
    }
}

int cmd_check(const std::string& params_path) {
    try {
        auto kv = load_key_values(params_path);
        std::map<std::string, std::string> str_kv(kv.begin(), kv.end());
        UavParams params = uav_params_from_map(str_kv);
        SpecReport report = spec_check(params, UavRequirements{});
        std::cout << format_report(report);
        return report.overall_pass ? kOk : kInfeasible;
    } catch (const MissingParameter& e) {
        std::cerr << "check: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "check: " << e.what() << "\n";
        return kInputError;
    }
}

int cmd_gen(std::uint64_t seed, const std::string& out_path) {
    try {
        PdpInstance inst = generate_fixture(seed);
        save_instance(out_path, inst, static_cast<long long>(seed));
        std::cout << "wrote " << out_path << " (seed " << seed << ")\n";
        return kOk;
    } catch (const std::exception& e) {
        std::cerr << "gen: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quadrotor delivery planning and simulation toolkit"};
    app.require_subcommand(1);

    // plan
    std::string instance_path, out_path, dump_path, config_path;
    bool cuts = true;
    double gap = 1e-6;
    std::size_t node_limit = 1'000'000;
    auto* plan = app.add_subcommand("plan", "solve a delivery instance into routes");
    plan->add_option("instance", instance_path, "instance JSON")->required();
    plan->add_option("-o,--out", out_path, "plan JSON output");
    plan->add_flag("--cuts,!--no-cuts", cuts, "add launch-leg cargo cuts (default on)");
    plan->add_option("--gap", gap, "optimality gap");
    plan->add_option("--node-limit", node_limit, "branch-and-bound node cap");
    plan->add_option("--dump-model", dump_path, "write the row/bound listing here");

    // oracle
    std::string o_instance, o_out;
    int max_legs = 0;
    auto* oracle = app.add_subcommand("oracle", "exhaustive reference solver");
    oracle->add_option("instance", o_instance, "instance JSON")->required();
    oracle->add_option("-o,--out", o_out, "plan JSON output");
    oracle->add_option("--max-legs", max_legs, "per-quad leg cap (default 2|R|+|V|)");

    // fly
    std::string f_plan, f_out = "trajectory.csv";
    double dt = 0.002, capture = 0.0;
    auto* fly = app.add_subcommand("fly", "simulate a plan under cascaded PID control");
    fly->add_option("plan", f_plan, "plan JSON")->required();
    fly->add_option("-o,--out", f_out, "trajectory CSV output");
    fly->add_option("--config", config_path, "airframe/gains config file");
    fly->add_option("--dt", dt, "integration step (s)");
    fly->add_option("--capture-radius", capture, "waypoint capture radius (m)");

    // edges
    std::string e_image, e_out = "edges.pgm", e_dump;
    double sigma = 1.4, t_low = -1.0, t_high = -1.0;
    auto* edges = app.add_subcommand("edges", "edge detection over a PGM image");
    edges->add_option("image", e_image, "input PGM (P2 or P5)")->required();
    edges->add_option("-o,--out", e_out, "edge map output (P5)");
    edges->add_option("--sigma", sigma, "gaussian sigma");
    edges->add_option("--t-low", t_low, "weak-edge threshold");
    edges->add_option("--t-high", t_high, "strong-edge threshold");
    edges->add_option("--dump-stages", e_dump, "write per-stage PGMs with this prefix");

    // check
    std::string c_params;
    auto* check = app.add_subcommand("check", "verify airframe parameters against the "
                                              "requirement list");
    check->add_option("params", c_params, "key=value parameter file")->required();

    // gen
    std::uint64_t seed = 1;
    std::string g_out = "instance.json";
    auto* gen = app.add_subcommand("gen", "generate a seeded tiny instance");
    gen->add_option("--seed", seed, "fixture seed")->required();
    gen->add_option("-o,--out", g_out, "instance JSON output");

    // config
    std::string cfg_out;
    auto* config = app.add_subcommand("config", "print or write the default config");
    config->add_option("-o,--out", cfg_out, "write instead of printing");

    CLI11_PARSE(app, argc, argv);

    if (plan->parsed()) return cmd_plan(instance_path, out_path, cuts, gap, node_limit, dump_path);
    if (oracle->parsed()) return cmd_oracle(o_instance, o_out, max_legs);
    if (fly->parsed()) return cmd_fly(f_plan, f_out, config_path, dt, capture);
    if (edges->parsed()) return cmd_edges(e_image, e_out, sigma, t_low, t_high, e_dump);
    if (check->parsed()) return cmd_check(c_params);
    if (gen->parsed()) return cmd_gen(seed, g_out);
    if (config->parsed()) {
        if (cfg_out.empty())
            std::cout << quadel::default_config_text();
        else
            quadel::write_text_file(cfg_out, quadel::default_config_text());
        return kOk;
    }
    return kInputError;
}
