#include "qwtorus/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <thread>

namespace qwtorus {

namespace detail {

void parallel_apply(std::size_t n, int threads, const std::function<void(std::size_t, std::size_t)>& chunk) {
    if (threads <= 1 || n < 2 * static_cast<std::size_t>(threads)) {
        chunk(0, n);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t per = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        std::size_t lo = per * t;
        std::size_t hi = std::min(n, lo + per);
        if (lo >= hi) break;
        pool.emplace_back(chunk, lo, hi);
    }
    for (auto& th : pool) th.join();
}

} // namespace detail

LogDouble log_weight(const Configuration& config, const GibbsParams<double>& params) {
    if (params.rows() != config.N()) throw structural_error("log_weight: activity count != N");
    double lg = 0.0;
    for (int r = 0; r < config.N(); ++r) {
        const double la = std::log(params.a[r]);
        for (int k = 0; k < config.m1(); ++k) {
            NeighborFrame f = neighbor_frame(config, {r, k});
            lg += f.C * la + std::log(params.pochhammer(f.A)) - std::log(params.pochhammer(f.B)) -
                  std::log(params.pochhammer(f.C));
        }
    }
    return LogDouble::from_log(lg);
}

std::vector<double> measure_table_log(const std::vector<Configuration>& states,
                                      const GibbsParams<double>& params) {
    if (states.empty()) throw structural_error("measure_table_log: empty state list");
    std::vector<double> lg(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) lg[i] = log_weight(states[i], params).log_value();
    const double hi = *std::max_element(lg.begin(), lg.end());
    double z = 0.0;
    for (double v : lg) z += std::exp(v - hi);
    const double logz = hi + std::log(z);
    std::vector<double> pi(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) pi[i] = std::exp(lg[i] - logz);
    return pi;
}

void write_measure_csv(std::ostream& os, const std::vector<Configuration>& states,
                       const GibbsParams<Rat>& params) {
    std::vector<Rat> pi = measure_table(states, params);
    std::vector<Rat> w(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) w[i] = weight(states[i], params);
    os << "occupation,weight_num,weight_den,probability\n";
    for (std::size_t i = 0; i < states.size(); ++i) {
        os << states[i].occupation_hex() << ',' << w[i].get_num().get_str() << ','
           << w[i].get_den().get_str() << ',' << to_double(pi[i]) << '\n';
    }
}

} // namespace qwtorus
