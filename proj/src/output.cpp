#include "nlde/output.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace nlde {

namespace {

void write_metadata(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& md,
                    bool with_timestamp) {
  for (const auto& [key, value] : md) os << "# " << key << ": " << value << "\n";
  if (with_timestamp) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
    os << "# generated: " << stamp << "\n";
  }
}

std::ofstream open_for_writing(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return os;
}

void finish(std::ofstream& os, const std::filesystem::path& path) {
  os.flush();
  if (!os) throw std::runtime_error("write to " + path.string() + " failed");
}

}  // namespace

std::string format_sci(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5e", value);
  return buf;
}

void write_table(std::ostream& os, const ConvergenceTable& table, bool with_timestamp) {
  os << "# " << table.title << "\n";
  write_metadata(os, table.metadata, with_timestamp);
  os << table.row_axis << "\\" << table.column_axis;
  for (double c : table.column_values) {
    os << "," << (table.column_axis == "M" ? std::to_string(static_cast<int>(c)) : format_sci(c));
  }
  os << "\n";
  for (std::size_t r = 0; r < table.row_values.size(); ++r) {
    os << format_sci(table.row_values[r]);
    for (double e : table.errors[r]) os << "," << format_sci(e);
    os << "\n";
    if (table.column_values.size() < 2) continue;
    os << "order";
    for (std::size_t c = 0; c < table.column_values.size(); ++c) {
      os << ",";
      if (r < table.orders.size() && table.orders[r][c]) os << format_sci(*table.orders[r][c]);
    }
    os << "\n";
  }
}

void emit_table(const ConvergenceTable& table, const std::filesystem::path& path) {
  auto os = open_for_writing(path);
  write_table(os, table);
  finish(os, path);
}

void write_series(std::ostream& os, const std::vector<ErrorRecord>& records,
                  const std::vector<std::pair<std::string, std::string>>& metadata) {
  write_metadata(os, metadata, false);
  os << "step,time,l2_error,h1_error,e_max,mass_drift,energy_drift\n";
  for (const auto& r : records) {
    os << r.step << "," << format_sci(r.time) << "," << format_sci(r.l2_error) << ","
       << format_sci(r.h1_error) << "," << format_sci(r.running_max) << ","
       << format_sci(r.mass_drift) << "," << format_sci(r.energy_drift) << "\n";
  }
}

void emit_series(const std::vector<ErrorRecord>& records,
                 const std::vector<std::pair<std::string, std::string>>& metadata,
                 const std::filesystem::path& path) {
  auto os = open_for_writing(path);
  write_series(os, records, metadata);
  finish(os, path);
}

void emit_observables(const std::vector<Checkpoint>& checkpoints,
                      const std::vector<std::pair<std::string, std::string>>& metadata,
                      const std::filesystem::path& path) {
  auto os = open_for_writing(path);
  write_metadata(os, metadata, false);
  os << "step,time,mass,energy,kinetic,mass_term,nonlinear,mass_drift,energy_drift\n";
  if (!checkpoints.empty()) {
    const EnergyReport& first = checkpoints.front().observables;
    for (const auto& cp : checkpoints) {
      const EnergyReport& e = cp.observables;
      os << cp.step << "," << format_sci(cp.time) << "," << format_sci(e.mass) << ","
         << format_sci(e.discrete_energy) << "," << format_sci(e.kinetic) << ","
         << format_sci(e.mass_term) << "," << format_sci(e.nonlinear) << ","
         << format_sci(std::abs(e.mass - first.mass) / first.mass) << ","
         << format_sci(std::abs(e.discrete_energy - first.discrete_energy)) << "\n";
    }
  }
  finish(os, path);
}

}  // namespace nlde
