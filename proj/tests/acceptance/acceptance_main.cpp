// One line per acceptance criterion; exit status 0 iff all pass.
#include <cstdio>
#include <cstring>
#include <sstream>
#include <string>

#include "eur/acceptance.hpp"
#include "eur/kernels.hpp"

int main(int argc, char** argv) {
  eur::verify::Options opt;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string id;
      while (std::getline(ss, id, ',')) opt.only.push_back(id);
    } else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
      opt.seed = std::stoull(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only id,...] [--seed n]\n", argv[0]);
      return 2;
    }
  }
  std::printf("kernel backend: %s\n",
              std::string(eur::kernels::to_string(eur::kernels::active_backend())).c_str());
  int failed = 0;
  for (const auto& r : eur::verify::run_checks(opt)) {
    std::printf("criterion %2d %-22s %s  (%.2fs)  %s\n", r.criterion, r.id.c_str(),
                r.passed ? "PASS" : "FAIL", r.seconds, r.detail.c_str());
    failed += r.passed ? 0 : 1;
  }
  std::printf("%s\n", failed == 0 ? "all criteria passed" : "some criteria FAILED");
  return failed == 0 ? 0 : 1;
}
