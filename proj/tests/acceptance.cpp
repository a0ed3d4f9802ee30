// One line per acceptance criterion; exit status 1 when any criterion fails.

#include <iostream>

#include "hstab/verify.hpp"

int main() {
  const hstab::VerifyReport r = hstab::run_verify({});
  for (const hstab::CheckResult& c : r.checks) {
    std::cout << (c.pass ? "PASS" : "FAIL") << " criterion " << c.id << " [" << c.topic << "] expected: " << c.expected
              << " | actual: " << c.actual << " | tol " << c.tolerance << "\n";
    if (!c.pass) std::cout << "     detail: " << c.detail << "\n";
  }
  return r.all_pass() ? 0 : 1;
}
