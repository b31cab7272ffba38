#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "src/run.hpp"

namespace {

int fail(g3plan::ExitCode code, const std::string& message) {
  nlohmann::json err = {{"error", g3plan::category(code)}, {"message", message}};
  std::cerr << err.dump() << "\n";
  return static_cast<int>(code);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Plans a G3 path and velocity profile between two path states"};
  std::string config_path;
  std::string out_dir;
  bool svg = false;
  double samples = 0.0;
  std::uint64_t seed = 1;
  int batch = 0;
  app.add_option("--config", config_path, "Request document (JSON)")->required();
  app.add_option("--out", out_dir, "Output directory");
  app.add_flag("--svg", svg, "Also write an SVG plot");
  app.add_option("--samples", samples, "Row spacing of the trajectory table in meters")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed for batch instance generation");
  app.add_option("--batch", batch, "Plan this many random instances instead")
      ->check(CLI::NonNegativeNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail(g3plan::ExitCode::kUsage, e.what());
  }

  using g3plan::ExitCode;
  try {
    std::ifstream in(config_path);
    if (!in) return fail(ExitCode::kParse, "cannot read " + config_path);
    std::stringstream buf;
    buf << in.rdbuf();
    g3plan::PlanRequest base = g3plan::parse_request(buf.str());
    if (!out_dir.empty()) base.out_dir = out_dir;
    if (svg) base.svg = true;
    if (samples > 0.0) base.resolution = samples;

    std::vector<g3plan::PlanRequest> requests =
        batch > 0 ? g3plan::batch_requests(base, batch, seed)
                  : std::vector<g3plan::PlanRequest>{base};
    for (const auto& r : requests) g3plan::validate(r);
    std::vector<g3plan::OutputFile> files;
    nlohmann::json report = nlohmann::json::array();
    for (const auto& r : requests) {
      const g3plan::TrajectoryRecord record = g3plan::plan_request(r);
      for (auto& f : g3plan::render_outputs(r, record)) files.push_back(std::move(f));
      report.push_back({{"name", r.name},
                        {"t_f", record.t_f},
                        {"s_f", record.s_f},
                        {"rho_bar", record.rho_bar},
                        {"total_cost", record.breakdown.total},
                        {"rows", record.rows.size()}});
    }
    g3plan::write_all(files);
    std::cout << report.dump(2) << "\n";
    return 0;
  } catch (const g3plan::ParseError& e) {
    return fail(ExitCode::kParse, e.what());
  } catch (const g3plan::ValidationError& e) {
    return fail(ExitCode::kValidation, e.what());
  } catch (const g3plan::PlanningError& e) {
    return fail(ExitCode::kPlanning, e.what());
  } catch (const g3plan::OutputError& e) {
    return fail(ExitCode::kOutput, e.what());
  } catch (const std::exception& e) {
    return fail(ExitCode::kPlanning, e.what());
  }
}
