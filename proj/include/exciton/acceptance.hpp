#pragma once

#include <string>
#include <vector>

namespace exciton::acceptance {

struct Criterion {
    int id;
    std::string name;
    double budget_seconds;  // wall-time limit, part of the verdict
    std::string statement;
};

const std::vector<Criterion>& criteria();

struct Outcome {
    int id;
    bool pass;
    double seconds;
    std::string detail;
};

// Throws std::out_of_range for an unknown id. Exceptions from the solvers are
// caught and reported as failures.
Outcome run(int id);

// "PASS  3 even-roots  (0.41 s / 5 s)  <detail>"
std::string format_line(const Outcome& o);

}  // namespace exciton::acceptance
