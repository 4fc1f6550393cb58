#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>

#include "trish/errors.hpp"
#include "trish/harness.hpp"

namespace trish {

namespace {

void put_real(std::ostream& out, double v) {
  if (std::isnan(v)) return;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

}  // namespace

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out) {
  const bool is_sg = trajectory.algorithm == "sg";
  out << kCsvHeader << '\n';
  for (const IterationRecord& r : trajectory.records) {
    const bool step = r.k > 0;
    out << r.k << ',';
    put_real(out, r.f);
    out << ',';
    put_real(out, r.grad_norm_true);
    out << ',';
    put_real(out, r.g_norm);
    out << ',';
    put_real(out, r.delta);
    out << ',';
    if (step && r.case_tag != 0) out << r.case_tag;
    out << ',';
    put_real(out, r.model_decrease);
    out << ',';
    put_real(out, r.cauchy_decrease);
    out << ',';
    if (step && !is_sg) out << r.cg_iterations;
    out << ',';
    if (r.upsilon) put_real(out, *r.upsilon);
    out << ',' << r.cost_units << ',' << r.wall_ns << '\n';
  }
}

void write_trajectory_csv(const Trajectory& trajectory, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing: " + std::strerror(errno));
  write_trajectory_csv(trajectory, out);
  out.flush();
  if (!out) throw Error("write failed for " + path.string());
}

std::string trajectory_filename(const Trajectory& trajectory) {
  return trajectory.algorithm + "_seed" + std::to_string(trajectory.seed) + ".csv";
}

}  // namespace trish
