#include "qmetro/parallel.hpp"

#include <cstdlib>
#include <string>

namespace qmetro {

unsigned worker_count() {
  if (const char* env = std::getenv("QMETRO_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace qmetro
