#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "msg/graph.hpp"
#include "msg/map.hpp"

namespace msg {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // witness on failure, summary otherwise
    double millis = 0;
};

struct AcceptanceOptions {
    std::uint64_t seed = 20240601;
    std::vector<int> only;  // empty runs all fourteen
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});
CriterionResult run_criterion(int id, std::uint64_t seed);
// "PASS 5 k4-census (3.1 ms): ..."
std::string format_result(const CriterionResult& r);

// Reference objects the suite checks against.
// Four vertices, a loop at each, single edge v1v2, double edges v2v3 and v4v1, single edge v3v4.
Multigraph four_cycle_with_loops();
Eigen::MatrixXi four_cycle_with_loops_matrix();
// Cycle data of the Klein-bottle dipole as printed, quadricell names over edges x,y,z,w.
std::vector<std::vector<std::string>> klein_dipole_printed_vertices();
std::vector<std::vector<std::string>> klein_dipole_printed_faces();

}  // namespace msg
