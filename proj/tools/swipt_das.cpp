// Command-line front end: solve, sweep, compare, region, verify.

#include "swipt/error.hpp"
#include "swipt/experiment.hpp"
#include "swipt/io.hpp"
#include "swipt/metrics.hpp"
#include "swipt/verify.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        swipt::write_text_file(out_path, text);
    }
}

int cmd_solve(const std::string& instance_path, const std::string& out_path) {
    const auto doc = swipt::load_instance(instance_path);
    const auto alloc = swipt::optimal_allocation(doc.instance);
    emit(out_path, swipt::allocation_to_json(alloc, doc).dump(2) + "\n");
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path, bool paired) {
    const auto config = swipt::load_config(config_path);
    const auto records = paired ? swipt::run_compare(config) : swipt::run_sweep(config);
    std::ostringstream csv;
    swipt::write_sweep_csv(csv, records);
    emit(out_path, csv.str());
    return 0;
}

struct RegionOptions {
    std::size_t points = 101;
    double xi = 0.5;
    double sigma2 = 1.0;
    double tau2 = 1.0;
    std::optional<double> q_min;
};

int cmd_region(const std::string& instance_path, const std::string& out_path,
               const RegionOptions& opt) {
    const auto doc = swipt::load_instance(instance_path);
    const auto alloc = swipt::optimal_allocation(doc.instance);
    const auto curve =
        swipt::rate_energy_curve(alloc.objective, opt.xi, opt.sigma2, opt.tau2, opt.points);
    std::ostringstream csv;
    swipt::write_region_csv(csv, curve);
    emit(out_path, csv.str());

    if (opt.q_min) {
        const double rho = swipt::ps_ratio_for_wet(*opt.q_min, alloc.objective, opt.xi, opt.sigma2);
        const auto m = swipt::evaluate_metrics(alloc.objective, rho, opt.xi, opt.sigma2, opt.tau2);
        std::ostream& log = out_path.empty() ? std::cerr : std::cout;
        log << "operating point: rho=" << swipt::format_number(m.ps_ratio)
            << " wit=" << swipt::format_number(m.wit) << " wet=" << swipt::format_number(m.wet)
            << '\n';
    }
    return 0;
}

int cmd_verify(const std::string& config_path) {
    const auto config = swipt::load_config(config_path);
    const auto report = swipt::run_verify(config);
    swipt::print_report(std::cout, report);
    return report.ok() ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal power allocation for SWIPT distributed antenna systems with grid trading"};
    app.require_subcommand(1);

    std::string instance_path;
    std::string config_path;
    std::string out_path;

    auto* solve = app.add_subcommand("solve", "Solve one instance and print the allocation as JSON");
    solve->add_option("instance", instance_path, "Instance JSON file")->required();
    solve->add_option("--out", out_path, "Write the result here instead of stdout");

    auto* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep written as CSV");
    sweep->add_option("--config", config_path, "Experiment config JSON")->required();
    sweep->add_option("--out", out_path, "Output CSV (stdout if omitted)");

    auto* compare = app.add_subcommand("compare", "Paired policy comparison written as CSV");
    compare->add_option("--config", config_path, "Experiment config JSON")->required();
    compare->add_option("--out", out_path, "Output CSV (stdout if omitted)");

    RegionOptions region_opt;
    double q_min = 0.0;
    auto* region = app.add_subcommand("region", "Rate-energy curve over the PS ratio as CSV");
    region->add_option("instance", instance_path, "Instance JSON file")->required();
    region->add_option("--points", region_opt.points, "Number of rho samples (>= 2)")
        ->capture_default_str();
    region->add_option("--out", out_path, "Output CSV (stdout if omitted)");
    region->add_option("--xi", region_opt.xi, "Energy conversion efficiency")->capture_default_str();
    region->add_option("--sigma2", region_opt.sigma2, "Antenna noise power")->capture_default_str();
    region->add_option("--tau2", region_opt.tau2, "Conversion noise power")->capture_default_str();
    auto* q_opt = region->add_option("--qmin", q_min, "Report the rho that harvests exactly this energy");

    auto* verify = app.add_subcommand("verify", "Audit the allocator against the oracles");
    verify->add_option("--config", config_path, "Experiment config JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) return cmd_solve(instance_path, out_path);
        if (*sweep) return cmd_sweep(config_path, out_path, false);
        if (*compare) return cmd_sweep(config_path, out_path, true);
        if (*region) {
            if (*q_opt) region_opt.q_min = q_min;
            return cmd_region(instance_path, out_path, region_opt);
        }
        if (*verify) return cmd_verify(config_path);
    } catch (const swipt::InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitFailure;
}
