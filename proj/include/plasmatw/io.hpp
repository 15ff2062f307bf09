#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace plasmatw {

/// Shortest round-trip decimal representation; reparsing recovers the exact
/// double, and identical inputs always format identically.
std::string format_double(double v);

uint64_t fnv1a64(std::string_view data);

class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_row(std::span<const double> values);
    void add_row(const std::vector<std::string>& cells);

    std::string str() const;
    uint64_t checksum() const { return fnv1a64(str()); }
    void write(const std::filesystem::path& path) const;

  private:
    std::vector<std::string> columns_;
    std::vector<std::string> rows_;
};

/// Number of worker threads for sweeps: PLASMATW_WORKERS when set, otherwise
/// the hardware concurrency.
int worker_count();

/// Runs fn(i) for i in [0, n) on a small thread pool; results are whatever
/// fn writes into its own slot, so ordering is by index.
void parallel_for_indexed(int n, const std::function<void(int)>& fn);

}  // namespace plasmatw
