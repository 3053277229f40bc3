#pragma once

namespace archrec {

// Execution policy for the data-parallel kernels. Serial is the reference path.
enum class Exec { Serial, Parallel };

// Sets the OpenMP team size used by Exec::Parallel kernels; 0 keeps the runtime default.
void set_kernel_threads(int threads);
int kernel_threads();

}  // namespace archrec
