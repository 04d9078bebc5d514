#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dpc/geometry.hpp"
#include "dpc/pipeline.hpp"

namespace dpc {

/// Read a point file. CSV rows are comma-separated decimal coordinates, one
/// point per row, with an optional single header line (any non-numeric first
/// row) skipped automatically; ragged rows and non-finite values are
/// rejected with the offending line number. Files starting with the binary
/// cache magic are read as the packed format instead.
PointSet read_points(const std::string& path);

/// Full-precision decimal CSV; reading it back reproduces the coordinates
/// exactly.
void write_points_csv(const std::string& path, const PointSet& points);

/// Packed little-endian cache: 8-byte magic, u64 n, u64 d, then n*d doubles.
void write_points_binary(const std::string& path, const PointSet& points);

bool is_binary_points_file(const std::string& path);

/// Rows "id,label" in id order; ids are 1-based and noise is -1. Cluster
/// labels are the 1-based id of the cluster's union-find root.
void write_labels(const std::string& path, const DpcResult& result);

/// Rows "id,rho,delta" in id order with the literal `inf` where delta is
/// infinite. Byte-identical across runs.
void write_decision_graph(const std::string& path, const DpcResult& result);

/// One clustering run's measurements.
struct RunReport {
  StepTimes step_times;
  std::size_t n = 0;
  std::size_t d = 0;
  DpcParams params;
  Strategy algo = Strategy::priority;
  unsigned threads = 0;
  std::size_t clusters = 0;
  std::size_t noise = 0;
  std::uint64_t labels_digest = 0;  // FNV-1a over the label sequence; not serialized
};

std::string run_report_json(const RunReport& report);
std::string run_report_csv_header();
std::string run_report_csv_row(const RunReport& report);

std::uint64_t labels_digest(const std::vector<std::int64_t>& labels);

/// Shortest decimal form that round-trips, `inf` for infinities.
std::string format_double(double value);

}  // namespace dpc
