#pragma once

// Chunked Monte Carlo driver. Work is cut into fixed-size chunks; chunk i
// draws from CounterRng(seed, i) only, and chunk results are merged in chunk
// order, so the estimate depends on (seed, n, chunk) and not on the number of
// threads.

#include "altzeta/rng.hpp"
#include "altzeta/special.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace altzeta {

struct SamplerConfig {
  std::uint64_t seed = 42;
  int burn_in = 100;
  int thinning = 1;
  long chunk = 4096;
  bool parallel = true;
};

/// Validates thinning >= 1, chunk >= 1, burn_in >= 0 (Errc::DomainError).
void validate(const SamplerConfig& cfg);

struct MCEstimate {
  cplx mean;
  double std_error = 0.0;
  double se_re = 0.0;
  double se_im = 0.0;
  long n_samples = 0;
  std::uint64_t seed = 0;
  std::string method;
};

/// An estimate with no sampling error (the integrand is constant).
MCEstimate exact_estimate(cplx value, long n, std::uint64_t seed, std::string method);

/// Fills `out` with `count` integrand values, drawing only from `rng`.
using ChunkKernel = std::function<void(CounterRng& rng, long count, std::vector<cplx>& out)>;

/// Runs ceil(n / cfg.chunk) chunks. The standard error comes from batch means
/// (16 batches per chunk), which stays valid for Markov-chain integrands with
/// correlation length well below chunk/16.
MCEstimate run_chunks(long n, const SamplerConfig& cfg, const ChunkKernel& kernel, std::string method);

}  // namespace altzeta
