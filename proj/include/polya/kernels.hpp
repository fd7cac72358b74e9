#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

// Data-parallel reduction kernels. Reductions are blocked with a fixed block
// size and the block partials are combined in index order, so the result is
// bitwise identical between the serial reference and the OpenMP version, for
// any thread count. Library sums (edge energies, perimeters, TV sweeps) go
// through these so that reports stay byte-identical across machines.
namespace polya::kernels {

inline constexpr std::size_t kBlock = 4096;

namespace serial {

template <class Term>
double indexed_sum(std::size_t n, Term term) {
  double total = 0.0;
  for (std::size_t b = 0; b < n; b += kBlock) {
    const std::size_t e = (b + kBlock < n) ? b + kBlock : n;
    double partial = 0.0;
    for (std::size_t i = b; i < e; ++i) partial += term(i);
    total += partial;
  }
  return total;
}

}  // namespace serial

template <class Term>
double indexed_sum(std::size_t n, Term term) {
#ifdef _OPENMP
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  if (nblocks < 2) return serial::indexed_sum(n, term);
  std::vector<double> partials(nblocks, 0.0);
#pragma omp parallel for schedule(static)
  for (long long bi = 0; bi < static_cast<long long>(nblocks); ++bi) {
    const std::size_t b = static_cast<std::size_t>(bi) * kBlock;
    const std::size_t e = (b + kBlock < n) ? b + kBlock : n;
    double partial = 0.0;
    for (std::size_t i = b; i < e; ++i) partial += term(i);
    partials[static_cast<std::size_t>(bi)] = partial;
  }
  double total = 0.0;
  for (double p : partials) total += p;
  return total;
#else
  return serial::indexed_sum(n, term);
#endif
}

}  // namespace polya::kernels
