#include "plasmatw/io.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <functional>
#include <thread>

namespace plasmatw {

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

uint64_t fnv1a64(std::string_view data) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

void CsvWriter::add_row(std::span<const double> values) {
    std::string row;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) row += ',';
        row += format_double(values[i]);
    }
    rows_.push_back(std::move(row));
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
    std::string row;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) row += ',';
        row += cells[i];
    }
    rows_.push_back(std::move(row));
}

std::string CsvWriter::str() const {
    std::string out;
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) out += ',';
        out += columns_[i];
    }
    out += '\n';
    for (const auto& r : rows_) {
        out += r;
        out += '\n';
    }
    return out;
}

void CsvWriter::write(const std::filesystem::path& path) const {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << str();
}

int worker_count() {
    if (const char* env = std::getenv("PLASMATW_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 4;
}

void parallel_for_indexed(int n, const std::function<void(int)>& fn) {
    const int workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace plasmatw
