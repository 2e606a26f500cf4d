#pragma once

namespace zfs {

/// Environment variable read by `configure_threads_from_env`.
inline constexpr const char* thread_env_var = "ZFSKIT_NUM_THREADS";

/// Worker threads used by the engine and the oracles. Results do not depend
/// on this value: reductions run over fixed chunks in a fixed order.
void set_thread_count(int n);
int thread_count();

/// Applies ZFSKIT_NUM_THREADS when set to a positive integer.
void configure_threads_from_env();

}  // namespace zfs
