#pragma once

namespace winspect {

/// Kernel execution mode. The parallel path uses OpenMP and is the default;
/// the serial path is the reference implementation kept for testing and
/// benchmarking. Both produce bit-identical results.
enum class RunMode { serial, parallel };

}  // namespace winspect
