#include "stratipm/par.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>
#include <string>

namespace stratipm::par {

namespace {
std::atomic<bool> g_force_serial{false};

int read_thread_cap() {
    int nt = omp_get_max_threads();
    if (const char* env = std::getenv("STRAT_IPM_THREADS")) {
        try {
            const int cap = std::stoi(env);
            if (cap >= 1 && cap < nt) nt = cap;
        } catch (...) {
            // ignore malformed values, keep the OMP default
        }
    }
    return nt;
}
}  // namespace

int num_threads() {
    static const int nt = read_thread_cap();
    return nt;
}

void set_force_serial(bool on) { g_force_serial.store(on); }
bool force_serial() { return g_force_serial.load(); }

}  // namespace stratipm::par
