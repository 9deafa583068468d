#pragma once

namespace nmcheck {

// Selects the OpenMP kernel or the serial reference loop. Both produce
// identical results; the serial path exists for testing and benchmarking.
enum class Execution { Serial, Parallel };

}  // namespace nmcheck
