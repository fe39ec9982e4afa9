#include "agfd/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace agfd {

namespace {
std::atomic<bool> g_quiet{false};
std::mutex g_io_mutex;
}  // namespace

void set_quiet(bool quiet) { g_quiet.store(quiet, std::memory_order_relaxed); }

bool quiet() { return g_quiet.load(std::memory_order_relaxed); }

void warn(const std::string& message) {
    if (quiet()) return;
    std::lock_guard<std::mutex> lock(g_io_mutex);
    std::cerr << "[agfd] warning: " << message << "\n";
}

}  // namespace agfd
