#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "inellipse/min_ecc.hpp"

namespace inellipse {

struct Residual {
    std::string label;
    double value = 0.0;
    double tolerance = 0.0;
};

struct CheckReport {
    std::string check;  // newton | t1 | t2 | t3 | l3 | l5 | mdqtrap | jmr | h0sq | r_positive
    bool pass = false;
    std::vector<Residual> residuals;
    std::string witness;  // offending input, JSON-ish, empty when pass
    std::string notes;    // e.g. "not applicable"
};

struct ParamRange {
    double lo = 0.0, hi = 1.0;
};

struct BatchConfig {
    int samples = 1000;
    std::uint64_t seed = 42;
    double margin = 0.05;  // parameter distance from the MDQ manifolds for negatives
    std::vector<std::string> checks;  // empty = all

    ParamRange qz_s{0.4, 4.0}, qz_t{0.3, 4.0}, qz_v{0.4, 4.0}, qz_w{-2.0, 2.0};
    ParamRange qst_s{0.15, 4.0}, qst_t{0.15, 4.0};
    ParamRange par_l{0.3, 3.0}, par_k{0.3, 3.0}, par_d{-1.5, 1.5};
};

// Per-claim checks on a single configuration.
CheckReport check_newton(const InscribedEllipseReport& rep);
CheckReport check_t1(const InscribedEllipseReport& rep);
CheckReport check_t2(const InscribedEllipseReport& rep);
CheckReport check_t3(const Quadrilateral& q);  // throws NotMdqError

// Randomized batch; deterministic given (seed, config). One aggregated
// report per check id, ordered as listed in the config.
std::vector<CheckReport> run_batch(const BatchConfig& cfg);

// All check ids, in canonical order.
const std::vector<std::string>& all_check_ids();

// Deterministic, portable generator (splitmix64 core).
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64();
    double uniform(double lo, double hi);
    // substream for (check, trial), independent of evaluation order
    static Rng substream(std::uint64_t seed, std::uint64_t check_tag, std::uint64_t trial);

   private:
    std::uint64_t state_;
};

}  // namespace inellipse
