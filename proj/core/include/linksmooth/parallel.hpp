#pragma once

#include <cstddef>
#include <functional>

namespace linksmooth {

struct ExecutionOptions {
  unsigned threads = 1;
};

/// Runs task(i) for i in [0, count) on up to `threads` workers.
///
/// Tasks must write only to slots they own. If any task throws, the exception
/// from the lowest failing index is rethrown after all workers join, so the
/// reported failure does not depend on scheduling.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& task);

}  // namespace linksmooth
