#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "pushrec/chain_io.hpp"
#include "pushrec/pipeline.hpp"

namespace fs = std::filesystem;
using namespace pushrec;

namespace {

// exit codes: 0 ok, 1 usage, 2 data error, 3 numeric failure
constexpr int kExitOk = 0, kExitData = 2, kExitNumeric = 3;

/// Expand directories into their sorted *.csv members.
std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs) {
    std::vector<std::string> out;
    for (const std::string& in : inputs) {
        if (fs::is_directory(in)) {
            std::vector<std::string> found;
            for (const auto& e : fs::directory_iterator(in))
                if (e.is_regular_file() && e.path().extension() == ".csv")
                    found.push_back(e.path().string());
            std::sort(found.begin(), found.end());
            out.insert(out.end(), found.begin(), found.end());
        } else {
            out.push_back(in);
        }
    }
    if (out.empty()) throw DataError("no input files");
    return out;
}

SmoothMethod parse_smooth_flag(const std::string& s) {
    if (s == "spline") return SplineMethod{};
    if (s.rfind("poly:", 0) == 0) {
        const std::string deg = s.substr(5);
        try {
            return PolyMethod{std::stoi(deg)};
        } catch (const std::exception&) {
            throw CLI::ValidationError("--smooth", "bad polynomial degree '" + deg + "'");
        }
    }
    if (s == "poly") return PolyMethod{};
    throw CLI::ValidationError("--smooth", "expected spline or poly:<degree>, got '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pushrec: sagittal push-recovery toolkit (ingest, smooth, simulate, "
                 "analyze, synth, plot)"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read option defaults from a config file")
        ->envname("PUSHREC_CONFIG");

    // --- ingest ------------------------------------------------------------
    auto* ingest = app.add_subcommand("ingest", "convert raw count trials to physical units");
    std::vector<std::string> ingest_inputs;
    std::string ingest_out, ingest_out_dir;
    IngestOptions ingest_opts;
    ingest->add_option("input", ingest_inputs, "trial file(s) or directory")->required();
    ingest->add_option("-o,--out", ingest_out, "output file (single input)");
    ingest->add_option("--out-dir", ingest_out_dir, "output directory (many inputs)");
    ingest->add_option("--angle-scale", ingest_opts.conversion.angle_scale_deg_per_count,
                       "degrees per count (default 300/999)")
        ->capture_default_str();
    ingest->add_option("--rest-window", ingest_opts.rest_window,
                       "leading samples averaged for the joint zero correction")
        ->capture_default_str();
    int ingest_threads = 0;
    ingest->add_option("--threads", ingest_threads, "worker threads for directories");

    // --- smooth ------------------------------------------------------------
    auto* smooth = app.add_subcommand("smooth", "smooth/resample every column of a CSV");
    std::string smooth_in, smooth_out, smooth_method = "spline";
    double smooth_rate = 0.0;
    smooth->add_option("input", smooth_in, "t-leading CSV (generic or converted trial)")
        ->required();
    smooth->add_option("-o,--out", smooth_out, "output CSV")->required();
    smooth->add_option("--smooth", smooth_method, "spline or poly:<degree> (default degree 7)")
        ->capture_default_str();
    smooth->add_option("--resample", smooth_rate, "uniform output rate in Hz");

    // --- simulate ----------------------------------------------------------
    auto* simulate = app.add_subcommand("simulate", "LIPM push simulation and verdict");
    SimulateOptions sim;
    double sim_g = 9.8, sim_z0 = 0.0, sim_height = 1.75, sim_mass = 70.0;
    double sim_z0_fraction = 0.57;
    std::string sim_controller = "capture_cop";
    simulate->add_option("--g", sim_g, "gravity m/s^2")->capture_default_str();
    simulate->add_option("--z0", sim_z0, "CoM height m (0 = derive from --height)");
    simulate->add_option("--height", sim_height, "subject height m")->capture_default_str();
    simulate->add_option("--z0-fraction", sim_z0_fraction, "CoM height fraction of stature")
        ->capture_default_str();
    simulate->add_option("--mass", sim_mass, "subject mass kg")->capture_default_str();
    simulate->add_option("--x0", sim.initial.x, "initial CoM offset m")->capture_default_str();
    simulate->add_option("--xdot0", sim.initial.xdot, "initial CoM velocity m/s")
        ->capture_default_str();
    simulate->add_option("--impulse", sim.impulse_ns, "push impulse N*s")
        ->capture_default_str();
    simulate
        ->add_option("--controller", sim_controller, "fixed_cop | capture_cop | bang_bang")
        ->capture_default_str()
        ->check(CLI::IsMember({"fixed_cop", "capture_cop", "bang_bang"}));
    simulate->add_option("--foot-min", sim.foot.cop_min, "heel CoP bound m")
        ->capture_default_str();
    simulate->add_option("--foot-max", sim.foot.cop_max, "toe CoP bound m")
        ->capture_default_str();
    simulate->add_option("--dt", sim.phase.dt, "integration step s")->capture_default_str();
    simulate->add_option("--t-end", sim.phase.t_end, "simulation horizon s")
        ->capture_default_str();
    simulate->add_option("--escape-radius", sim.phase.escape_radius,
                         "fall radius from the foot midpoint m")
        ->capture_default_str();
    simulate->add_option("-o,--out", sim.phase_out, "phase CSV t,x,xdot,p")->required();
    simulate->add_option("--boundary-out", sim.boundary_out, "boundary CSV x,xdot_boundary");
    simulate->add_option("--report-out", sim.report_out, "verdict report JSON");

    // --- analyze -----------------------------------------------------------
    auto* analyze = app.add_subcommand("analyze", "gait analytics and handedness inference");
    std::vector<std::string> analyze_inputs;
    std::string analyze_out;
    AnalyzeOptions an;
    analyze->add_option("input", analyze_inputs, "trial file(s) or directory")->required();
    analyze->add_option("-o,--out", analyze_out, "report JSON path")->required();
    analyze->add_option("--angle-scale", an.config.conversion.angle_scale_deg_per_count,
                        "degrees per count (default 300/999)")
        ->capture_default_str();
    analyze->add_option("--rest-window", an.config.rest_window,
                        "leading samples for zero correction and activity baseline")
        ->capture_default_str();
    analyze->add_option("--weight-hip", an.config.weights.hip, "hip weight")
        ->capture_default_str();
    analyze->add_option("--weight-knee", an.config.weights.knee, "knee weight")
        ->capture_default_str();
    analyze->add_option("--weight-ankle", an.config.weights.ankle, "ankle weight")
        ->capture_default_str();
    analyze->add_option("--threshold", an.config.threshold,
                        "indeterminate band for the weighted asymmetry")
        ->capture_default_str();
    analyze->add_option("--cop-left", an.cop_left, "left-foot force CSV (t,force)");
    analyze->add_option("--cop-right", an.cop_right, "right-foot force CSV (t,force)");
    analyze->add_option("--threads", an.threads, "worker threads");

    // --- synth -------------------------------------------------------------
    auto* synth = app.add_subcommand("synth", "generate a synthetic trial");
    SynthOptions sy;
    std::string sy_out, sy_sex = "male", sy_hand = "right";
    std::string sy_eyes = "closed", sy_lung = "without", sy_stance = "static";
    synth->add_option("-o,--out", sy_out, "output trial file")->required();
    synth->add_option("--height", sy.meta.height_m, "subject height m")->capture_default_str();
    synth->add_option("--weight", sy.meta.weight_kg, "subject weight kg")
        ->capture_default_str();
    synth->add_option("--sex", sy_sex, "male | female")
        ->capture_default_str()
        ->check(CLI::IsMember({"male", "female"}));
    synth->add_option("--handedness", sy_hand, "left | right | unknown")
        ->capture_default_str()
        ->check(CLI::IsMember({"left", "right", "unknown"}));
    synth->add_option("--age", sy.meta.age_years, "subject age years")->capture_default_str();
    synth->add_option("--eyes", sy_eyes, "open | closed")
        ->capture_default_str()
        ->check(CLI::IsMember({"open", "closed"}));
    synth->add_option("--lunging", sy_lung, "with | without")
        ->capture_default_str()
        ->check(CLI::IsMember({"with", "without"}));
    synth->add_option("--stance", sy_stance, "static | dynamic")
        ->capture_default_str()
        ->check(CLI::IsMember({"static", "dynamic"}));
    synth->add_option("--onset", sy.push.onset_s, "push onset s")->capture_default_str();
    synth->add_option("--impulse", sy.push.impulse_ns, "push impulse N*s")
        ->capture_default_str();
    synth->add_option("--noise", sy.noise_rms_counts, "count noise rms")
        ->capture_default_str();
    synth->add_option("--seed", sy.seed, "random seed")->capture_default_str();
    synth->add_option("--duration", sy.config.duration_s, "trial length s")
        ->capture_default_str();
    synth->add_option("--rate", sy.config.rate_hz, "sample rate Hz")->capture_default_str();
    synth->add_option("--cycle", sy.config.cycle_s, "gait cycle s (dynamic stance)")
        ->capture_default_str();

    // --- plot --------------------------------------------------------------
    auto* plot = app.add_subcommand("plot", "render a CSV as a standalone SVG");
    std::string plot_in, plot_out, plot_kind = "auto", plot_boundary, plot_title;
    plot->add_option("input", plot_in, "phase CSV or any t-leading CSV")->required();
    plot->add_option("-o,--out", plot_out, "output SVG")->required();
    plot->add_option("--kind", plot_kind, "auto | phase | series")
        ->capture_default_str()
        ->check(CLI::IsMember({"auto", "phase", "series"}));
    plot->add_option("--boundary", plot_boundary, "boundary CSV overlay for phase plots");
    plot->add_option("--title", plot_title, "plot title");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // exit 0 for --help/--version, 1 for any usage error
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*ingest) {
            const auto inputs = expand_inputs(ingest_inputs);
            if (inputs.size() == 1 && !ingest_out.empty()) {
                run_ingest_file(inputs[0], ingest_out, ingest_opts);
            } else {
                if (ingest_out_dir.empty())
                    throw DataError("ingest: use -o for one input or --out-dir for many");
                fs::create_directories(ingest_out_dir);
                parallel_for(static_cast<int>(inputs.size()), ingest_threads, [&](int i) {
                    const fs::path in(inputs[static_cast<size_t>(i)]);
                    const fs::path out = fs::path(ingest_out_dir) /
                                         (in.stem().string() + "_converted.csv");
                    run_ingest_file(in.string(), out.string(), ingest_opts);
                });
            }
        } else if (*smooth) {
            SmoothOptions opts;
            opts.method = parse_smooth_flag(smooth_method);
            if (smooth->count("--resample")) opts.resample_hz = smooth_rate;
            run_smooth_file(smooth_in, smooth_out, opts);
        } else if (*simulate) {
            const double z0 = sim_z0 != 0.0 ? sim_z0 : sim_z0_fraction * sim_height;
            sim.params = LipmParams::make(sim_g, z0, sim_mass);
            sim.policy = sim_controller == "fixed_cop"   ? CopPolicy::FixedCop
                         : sim_controller == "bang_bang" ? CopPolicy::BangBang
                                                         : CopPolicy::CaptureCop;
            const RecoveryReport report = run_simulate(sim);
            std::cout << (report.verdict == Verdict::Recoverable ? "recoverable" : "fall")
                      << " capture_point=" << format_double(report.capture_point)
                      << " margin=" << format_double(report.boundary_margin) << "\n";
        } else if (*analyze) {
            const auto inputs = expand_inputs(analyze_inputs);
            const BatchAnalysis batch = run_analyze(inputs, analyze_out, an);
            for (const TrialAnalysis& t : batch.trials)
                std::cout << t.source << ": " << to_string(t.handedness.inferred)
                          << " aggregate=" << format_double(t.handedness.aggregate) << "\n";
        } else if (*synth) {
            sy.meta.sex = sex_from_string(sy_sex);
            sy.meta.handedness = handedness_from_string(sy_hand);
            sy.condition.eyes = eyes_from_string(sy_eyes);
            sy.condition.lunging = lunging_from_string(sy_lung);
            sy.condition.stance = stance_from_string(sy_stance);
            run_synth(sy, sy_out);
        } else if (*plot) {
            PlotOptions opts;
            opts.kind = plot_kind == "phase"    ? PlotKind::Phase
                        : plot_kind == "series" ? PlotKind::Series
                                                : PlotKind::Auto;
            opts.boundary = plot_boundary;
            opts.title = plot_title;
            run_plot(plot_in, plot_out, opts);
        }
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitOk;
}
