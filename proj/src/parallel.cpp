#include "hpw/parallel.hpp"

#include <cstdlib>
#include <string>

namespace hpw {

int thread_count() {
  if (const char* env = std::getenv("HPW_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace hpw
