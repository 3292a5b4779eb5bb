#include "ctdg/random.hpp"

#include <boost/random/lognormal_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

namespace ctdg {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return mix64(mix64(mix64(seed) ^ stream) ^ index);
}

double uniform_real(Rng& rng, double lo, double hi) {
    return boost::random::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t uniform_index(Rng& rng, std::size_t n) {
    return boost::random::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

double standard_normal(Rng& rng) {
    return boost::random::normal_distribution<double>(0.0, 1.0)(rng);
}

long poisson(Rng& rng, double mean) {
    return boost::random::poisson_distribution<long, double>(mean)(rng);
}

double lognormal(Rng& rng, double log_mean, double log_sd) {
    return boost::random::lognormal_distribution<double>(log_mean, log_sd)(rng);
}

}  // namespace ctdg
