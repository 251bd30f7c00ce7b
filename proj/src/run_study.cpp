#include "nlde/run_study.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nlde/config.hpp"
#include "nlde/harness.hpp"
#include "nlde/output.hpp"

namespace nlde {

namespace {

std::string eps_tag(double eps) {
  std::ostringstream os;
  os.precision(6);
  os << eps;
  return os.str();
}

void print_rows(const ConvergenceTable& t, std::ostream& log) {
  for (std::size_t r = 0; r < t.row_values.size(); ++r) {
    log << t.row_axis << "=" << format_sci(t.row_values[r]) << " |";
    for (std::size_t c = 0; c < t.column_values.size(); ++c) {
      log << " " << format_sci(t.errors[r][c]);
      if (r < t.orders.size() && t.orders[r][c]) log << " (" << format_sci(*t.orders[r][c]) << ")";
    }
    log << "\n";
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path);
  os << text << "\n";
  if (!os) throw std::runtime_error("cannot write " + path.string());
}

void dispatch(const StudyConfig& config, const std::filesystem::path& dir, int threads,
              std::ostream& log) {
  switch (config.kind) {
    case StudyKind::run: {
      const RunResult r = run_single(config);
      auto md = describe_config(config);
      md.emplace_back("realized_final_time", format_sci(r.realized_final_time));
      emit_observables(r.checkpoints, md, dir / "run_observables.csv");
      emit_series(r.records, md, dir / "run_series.csv");
      const Checkpoint& last = r.checkpoints.back();
      log << "run | steps=" << last.step << " t=" << format_sci(last.time)
          << " mass_drift=" << format_sci(r.records.back().mass_drift)
          << " energy_drift=" << format_sci(r.records.back().energy_drift) << "\n";
      return;
    }
    case StudyKind::temporal: {
      const ConvergenceTable t = temporal_convergence(config, threads);
      emit_table(t, dir / "temporal.csv");
      print_rows(t, log);
      return;
    }
    case StudyKind::spatial: {
      const ConvergenceTable t = spatial_convergence(config, threads);
      emit_table(t, dir / "spatial.csv");
      print_rows(t, log);
      return;
    }
    case StudyKind::oscillatory_table: {
      const ConvergenceTable t = oscillatory_table(config, threads);
      emit_table(t, dir / "oscillatory_table.csv");
      print_rows(t, log);
      return;
    }
    case StudyKind::energy_drift: {
      const ConvergenceTable t = energy_drift_study(config, threads);
      emit_table(t, dir / "energy_drift.csv");
      print_rows(t, log);
      return;
    }
    case StudyKind::long_time: {
      const LongTimeResult res = long_time_study(config, threads);
      for (const auto& s : res.series) {
        auto md = describe_config(config);
        md.emplace_back("series_eps", format_sci(s.epsilon));
        md.emplace_back("realized_final_time", format_sci(s.realized_final_time));
        emit_series(s.records, md, dir / ("long_time_eps_" + eps_tag(s.epsilon) + ".csv"));
      }
      emit_table(res.summary, dir / "long_time_summary.csv");
      print_rows(res.summary, log);
      return;
    }
  }
}

}  // namespace

int run_study(const StudyConfig& config, std::ostream& log,
              const std::optional<std::filesystem::path>& out_dir, int threads) {
  const std::filesystem::path dir = out_dir ? *out_dir : std::filesystem::path(config.out);
  try {
    std::filesystem::create_directories(dir);
    StudyConfig effective = config;
    effective.out = dir.string();
    write_text(dir / "effective_config.json", config_to_json(effective));
    dispatch(config, dir, threads, log);
  } catch (const StudyError& e) {
    log << "error: job failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace nlde
