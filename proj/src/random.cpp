#include "levystein/random.hpp"

#include <cstdlib>
#include <string>
#include <thread>

namespace levystein {

unsigned thread_count() {
  if (const char* env = std::getenv("LEVYSTEIN_THREADS")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : h;
}

}  // namespace levystein
