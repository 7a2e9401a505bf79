// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <iostream>

#include "glc/selfcheck.hpp"

int main(int argc, char** argv) {
  std::string filter = argc > 1 ? argv[1] : "";
  bool all = true;
  for (auto& r : glc::run_selfcheck(filter)) {
    std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.name << ": "
              << r.detail << "\n";
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
