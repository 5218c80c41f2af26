#pragma once

#include "hopfkit/linalg.hpp"

namespace hopfkit {

/* Row-elimination and product kernels. The parallel variants distribute
 * independent row updates over OpenMP threads; results are bit-identical
 * to the serial reference because every row is computed independently
 * with exact arithmetic. */

bool kernels_parallel_enabled();
void set_kernels_parallel(bool on);  // overridden by HOPFKIT_SERIAL=1

/* rows[i] -= rows[i][piv_col] * pivot for every i != skip_row */
void eliminate_column_serial(std::vector<SVec>& rows, const SVec& pivot,
                             uint32_t piv_col, size_t skip_row);
void eliminate_column_parallel(std::vector<SVec>& rows, const SVec& pivot,
                               uint32_t piv_col, size_t skip_row);
void eliminate_column(std::vector<SVec>& rows, const SVec& pivot,
                      uint32_t piv_col, size_t skip_row);

SparseMat mat_mul_serial(const SparseMat& a, const SparseMat& b);
SparseMat mat_mul_parallel(const SparseMat& a, const SparseMat& b);

}  // namespace hopfkit
