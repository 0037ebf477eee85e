// Runs acceptance criteria through the C API and prints one line each.
// Usage: acceptance [--threads N] [--work-dir DIR] [id ...]

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "drs/drs.h"

int main(int argc, char** argv) {
  int threads = 0;
  std::string work_dir;
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc) {
      threads = std::atoi(argv[++i]);
    } else if (std::strcmp(argv[i], "--work-dir") == 0 && i + 1 < argc) {
      work_dir = argv[++i];
    } else {
      ids.push_back(std::atoi(argv[i]));
    }
  }
  if (ids.empty()) {
    for (int id = 1; id <= drs_criterion_count(); ++id) ids.push_back(id);
  }

  int failed = 0;
  for (int id : ids) {
    drs_criterion_result r;
    const drs_status st =
        drs_verify_criterion(id, threads, work_dir.empty() ? nullptr : work_dir.c_str(), &r);
    if (st != DRS_OK) {
      std::printf("FAIL criterion %2d  error: %s: %s\n", id, drs_status_name(st),
                  drs_last_error());
      ++failed;
      continue;
    }
    std::printf("%s criterion %2d  %s (%.1fs): %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name,
                r.seconds, r.detail);
    std::fflush(stdout);
    failed += r.passed ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
