#include "altzeta/mc.hpp"

#include "altzeta/error.hpp"

#include <cmath>

namespace altzeta {

namespace {

constexpr int kBatchesPerChunk = 16;

struct Batch {
  std::complex<long double> sum;
  long count;
};

std::vector<Batch> run_one_chunk(long index, long count, const SamplerConfig& cfg, const ChunkKernel& kernel,
                                 std::vector<cplx>& buffer) {
  CounterRng rng(cfg.seed, static_cast<std::uint64_t>(index));
  buffer.clear();
  kernel(rng, count, buffer);
  if (static_cast<long>(buffer.size()) != count) throw std::logic_error("chunk kernel returned wrong count");
  std::vector<Batch> batches;
  const long size = std::max<long>(1, (count + kBatchesPerChunk - 1) / kBatchesPerChunk);
  for (long start = 0; start < count; start += size) {
    const long stop = std::min(count, start + size);
    std::complex<long double> s = 0.0L;
    for (long i = start; i < stop; ++i) s += std::complex<long double>(buffer[i].real(), buffer[i].imag());
    batches.push_back({s, stop - start});
  }
  return batches;
}

}  // namespace

void validate(const SamplerConfig& cfg) {
  if (cfg.thinning < 1) throw Error(Errc::DomainError, "thinning must be >= 1");
  if (cfg.chunk < 1) throw Error(Errc::DomainError, "chunk must be >= 1");
  if (cfg.burn_in < 0) throw Error(Errc::DomainError, "burn-in must be >= 0");
}

MCEstimate exact_estimate(cplx value, long n, std::uint64_t seed, std::string method) {
  return {value, 0.0, 0.0, 0.0, n, seed, std::move(method)};
}

MCEstimate run_chunks(long n, const SamplerConfig& cfg, const ChunkKernel& kernel, std::string method) {
  validate(cfg);
  if (n < 2) throw Error(Errc::DomainError, "need at least 2 samples");
  const long n_chunks = (n + cfg.chunk - 1) / cfg.chunk;
  std::vector<std::vector<Batch>> results(static_cast<std::size_t>(n_chunks));
  auto count_of = [&](long c) { return std::min(cfg.chunk, n - c * cfg.chunk); };

  if (cfg.parallel) {
    std::exception_ptr failure;
#pragma omp parallel
    {
      std::vector<cplx> buffer;
#pragma omp for schedule(dynamic)
      for (long c = 0; c < n_chunks; ++c) {
        try {
          results[c] = run_one_chunk(c, count_of(c), cfg, kernel, buffer);
        } catch (...) {
#pragma omp critical
          if (!failure) failure = std::current_exception();
        }
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    std::vector<cplx> buffer;
    for (long c = 0; c < n_chunks; ++c) results[c] = run_one_chunk(c, count_of(c), cfg, kernel, buffer);
  }

  // merge in chunk order
  std::complex<long double> total = 0.0L;
  std::size_t n_batches = 0;
  for (const auto& chunk : results)
    for (const Batch& b : chunk) {
      total += b.sum;
      ++n_batches;
    }
  const std::complex<long double> mean = total / static_cast<long double>(n);
  long double var_re = 0.0L, var_im = 0.0L;
  for (const auto& chunk : results)
    for (const Batch& b : chunk) {
      const long double w = static_cast<long double>(b.count) / n;
      const auto d = b.sum / static_cast<long double>(b.count) - mean;
      var_re += w * w * d.real() * d.real();
      var_im += w * w * d.imag() * d.imag();
    }
  const long double k = n_batches > 1 ? static_cast<long double>(n_batches) / (n_batches - 1) : 0.0L;
  MCEstimate est;
  est.mean = {static_cast<double>(mean.real()), static_cast<double>(mean.imag())};
  est.se_re = static_cast<double>(std::sqrt(k * var_re));
  est.se_im = static_cast<double>(std::sqrt(k * var_im));
  est.std_error = std::hypot(est.se_re, est.se_im);
  est.n_samples = n;
  est.seed = cfg.seed;
  est.method = std::move(method);
  return est;
}

}  // namespace altzeta
