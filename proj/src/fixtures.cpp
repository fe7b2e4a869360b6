#include "curvlab/spacetimes.hpp"

namespace curvlab {
namespace {

struct Row {
  const char* tensor;
  std::vector<int> indices;
  const char* source;
  Trust trust;
};

// Closed forms of the VBdS component tables. Identifiers beyond the chart
// coordinates are lam, m, q, mp = dm/dt, q2p = d(q^2)/dt and the helper
// scalars l1..l8.
const Row kRows[] = {
    {"g", {1, 1}, "1 - 2*m/r + q^2/r^2 - lam*r^2/3", Trust::required},
    {"g", {1, 2}, "-1", Trust::required},
    {"g", {2, 1}, "-1", Trust::required},
    {"g", {3, 3}, "-(r^2)", Trust::required},
    {"g", {4, 4}, "-(r^2)*sin(theta)^2", Trust::required},

    {"Gamma", {1, 1, 1}, "-l2/(3*r^3)", Trust::required},
    {"Gamma", {2, 1, 2}, "l2/(3*r^3)", Trust::required},
    {"Gamma", {2, 1, 1}, "(2*r^6*lam*(-3 + r^2*lam) - 6*(6*r^2*m^2 + 3*q^2)*(r^2 + q^2) + m*l6 + 3*r^4*mp + 9*r^3*q2p)/(18*r^5)", Trust::audit},
    {"Gamma", {3, 2, 3}, "1/r", Trust::required},
    {"Gamma", {4, 2, 4}, "1/r", Trust::audit},
    {"Gamma", {1, 3, 3}, "-r", Trust::required},
    {"Gamma", {2, 3, 3}, "-r + l1/(3*r)", Trust::audit},
    {"Gamma", {2, 4, 4}, "sin(theta)^2*(-r + l1/(3*r))", Trust::audit},
    {"Gamma", {4, 3, 4}, "cot(theta)", Trust::required},
    {"Gamma", {1, 4, 4}, "-r*sin(theta)^2", Trust::required},
    {"Gamma", {3, 4, 4}, "-cos(theta)*sin(theta)", Trust::required},

    {"R", {1, 2, 1, 2}, "l3/(3*r^4)", Trust::required},
    {"R", {1, 3, 1, 3}, "-(-3*r^2 + l1)*l2/(9*r^4) - mp + q2p/(2*r)", Trust::required},
    {"R", {1, 4, 1, 4}, "sin(theta)^2*(-(-3*r^2 + l1)*l2/(9*r^4) - mp + q2p/(2*r))", Trust::required},
    {"R", {1, 3, 2, 3}, "-l2/(3*r^2)", Trust::required},
    {"R", {1, 4, 2, 4}, "-(sin(theta)^2)*l2/(3*r^2)", Trust::required},
    {"R", {3, 4, 3, 4}, "-(l1/3)*sin(theta)^2", Trust::required},

    {"S", {1, 1}, "(r^6*lam*(3 - r^2*lam) - l4 - 6*r^4*mp + 3*r^3*q2p)/(3*r^6)", Trust::required},
    {"S", {1, 2}, "-lam + q^2/r^4", Trust::required},
    {"S", {3, 3}, "-(r^4*lam + q^2)/r^2", Trust::required},
    {"S", {4, 4}, "-(sin(theta)^2)*(r^4*lam + q^2)/r^2", Trust::required},

    {"S2", {1, 1}, "-((r^4*lam - q^2)*l4 + (r^8*lam^2 + 12*r^4*mp - 3*r^6*lam - 6*r^3*q2p))/(3*r^10)", Trust::required},
    {"S2", {1, 2}, "-((lam - q^2/r^4)^2)", Trust::required},
    {"S2", {3, 3}, "-((r^4*lam + q^2)^2)/r^6", Trust::required},
    {"S2", {4, 4}, "-(sin(theta)^2)*(r^4*lam + q^2)^2/r^6", Trust::required},

    {"kappa", {}, "4*lam", Trust::required},

    {"W1", {1, 2, 1, 2}, "2", Trust::required},
    {"W1", {1, 3, 1, 3}, "2*(r^2 - l1/3)", Trust::required},
    {"W1", {1, 4, 1, 4}, "2*sin(theta)^2*(r^2 - l1/3)", Trust::required},
    {"W1", {1, 3, 2, 3}, "-2*r^2", Trust::required},
    {"W1", {1, 4, 2, 4}, "-2*r^2*sin(theta)^2", Trust::required},
    {"W1", {3, 4, 3, 4}, "-2*r^4*sin(theta)^2", Trust::required},

    {"W2", {1, 2, 1, 2}, "2*lam - 2*q^2/r^4", Trust::required},
    {"W2", {1, 3, 1, 3}, "2*r^2*lam - 2*r^4*lam^2/3 - 4*r*lam*m + 2*lam*q^2 - 2*mp + q2p/r", Trust::required},
    {"W2", {1, 4, 1, 4}, "sin(theta)^2*(2*r^2*lam - 2*r^4*lam^2/3 - 4*r*lam*m + 2*lam*q^2 - 2*mp + q2p/r)", Trust::required},
    {"W2", {1, 3, 2, 3}, "-2*r^2*lam", Trust::required},
    {"W2", {1, 4, 2, 4}, "-2*r^2*lam*sin(theta)^2", Trust::required},
    {"W2", {3, 4, 3, 4}, "-2*(r^4*lam + q^2)*sin(theta)^2", Trust::required},

    {"W3", {1, 2, 1, 2}, "2*(lam - q^2/r^4)^2", Trust::required},
    {"W3", {1, 3, 1, 3}, "2*(r^4*lam + q^2)*(r^6*lam*(3 - r^2*lam) - l4 - 6*r^4*mp + 3*q2p)/(3*r^8)", Trust::required},
    {"W3", {1, 4, 1, 4}, "sin(theta)^2*2*(r^4*lam + q^2)*(r^6*lam*(3 - r^2*lam) - l4 - 6*r^4*mp + 3*q2p)/(3*r^8)", Trust::required},
    {"W3", {1, 3, 2, 3}, "2*(-(r^8)*lam^2 + q^4)/r^6", Trust::required},
    {"W3", {1, 4, 2, 4}, "sin(theta)^2*2*(-(r^8)*lam^2 + q^4)/r^6", Trust::required},
    {"W3", {3, 4, 3, 4}, "-2*(r^4*lam + q^2)^2*sin(theta)^2/r^4", Trust::required},

    {"W4", {1, 2, 1, 2}, "2*(lam - q^2/r^4)^2", Trust::required},
    {"W4", {1, 3, 1, 3}, "(-2*(-3*r^2 + l1)*(r^8*lam^2 + q^4) + 12*r^4*(q^2 - r^4*lam)*mp + 6*r^3*(r^4*lam - q^2)*q2p)/(3*r^8)", Trust::required},
    {"W4", {1, 4, 1, 4}, "sin(theta)^2*(-2*(-3*r^2 + l1)*(r^8*lam^2 + q^4) + 12*r^4*(q^2 - r^4*lam)*mp + 6*r^3*(r^4*lam - q^2)*q2p)/(3*r^8)", Trust::required},
    {"W4", {1, 3, 2, 3}, "-2*(r^8*lam^2 + q^4)/r^6", Trust::required},
    {"W4", {1, 4, 2, 4}, "-2*sin(theta)^2*(r^8*lam^2 + q^4)/r^6", Trust::required},
    {"W4", {3, 4, 3, 4}, "-2*(r^4*lam + q^2)^2*sin(theta)^2/r^4", Trust::required},

    {"W5", {1, 2, 1, 2}, "2*(r^4*lam - q^2)^3/r^12", Trust::audit},
    {"W5", {1, 3, 1, 3}, "-((r^4*lam + q^2)*(2*r*lam)*(-3*r^2 + l1)*(r^4*lam - q^2) + 6*r*(3*r^4*lam - q^2)*mp + 3*(-3*r^4*lam + q^2)*q2p)/(3*r^9)", Trust::audit},
    {"W5", {1, 3, 2, 3}, "-2*r^2*lam^3 + 2*lam*q^4/r^6", Trust::audit},
    {"W5", {3, 4, 3, 4}, "-2*(r^4*lam + q^2)^3*sin(theta)^2/r^8", Trust::audit},

    {"W6", {1, 2, 1, 2}, "2*(lam - q^2/r^4)^4", Trust::audit},
    {"W6", {1, 3, 1, 3}, "-(2*(r^4*lam - q^2)*(r^4*lam + q^2)^2*l4 + r^8*lam^2 - 3*r^6*lam + 12*r^4*mp - 6*r^3*q2p)/(3*r^16)", Trust::audit},
    {"W6", {1, 3, 2, 3}, "-2*(-(r^8)*lam^2 + q^4)^2/r^14", Trust::audit},
    {"W6", {3, 4, 3, 4}, "-2*(r^4*lam + q^2)^4*sin(theta)^2/r^12", Trust::audit},

    {"C", {1, 2, 1, 2}, "(2*r*m - 2*q^2)/r^4", Trust::required},
    {"C", {1, 3, 1, 3}, "(-3*r^2 + l1)*(r*m - q^2)/(3*r^4)", Trust::required},
    {"C", {1, 4, 1, 4}, "sin(theta)^2*(-3*r^2 + l1)*(r*m - q^2)/(3*r^4)", Trust::required},
    {"C", {1, 3, 2, 3}, "(r*m - q^2)/r^2", Trust::required},
    {"C", {1, 4, 2, 4}, "sin(theta)^2*(r*m - q^2)/r^2", Trust::required},
    {"C", {3, 4, 3, 4}, "2*(-r*m + q^2)*sin(theta)^2", Trust::required},

    {"DC", {1, 2, 1, 2, 1}, "(2*r*mp - 2*q2p)/r^4", Trust::audit},
    {"DC", {1, 2, 1, 2, 2}, "(-6*r*m + 8*q^2)/r^5", Trust::audit},
    {"DC", {1, 2, 1, 3, 3}, "-(-3*r^2 + l1)*(r*m - q^2)/r^5", Trust::audit},
    {"DC", {1, 2, 1, 4, 4}, "-(sin(theta)^2)*(-3*r^2 + l1)*(r*m - q^2)/r^5", Trust::audit},
    {"DC", {1, 2, 2, 3, 3}, "(-3*r*m + 3*q^2)/r^3", Trust::audit},
    {"DC", {1, 2, 2, 4, 4}, "sin(theta)^2*(-3*r*m + 3*q^2)/r^3", Trust::audit},
    {"DC", {1, 3, 1, 3, 1}, "(-3*r^2 + l1)*(r*mp - q2p)/(3*r^4)", Trust::audit},
    {"DC", {1, 3, 1, 3, 2}, "-(3*r*m - 4*q^2)*(-3*r^2 + l1)/(3*r^5)", Trust::audit},
    {"DC", {1, 3, 2, 3, 1}, "(r*mp - q2p)/r^2", Trust::audit},
    {"DC", {1, 3, 2, 3, 2}, "(-3*r*m + 4*q^2)/r^3", Trust::audit},
    {"DC", {2, 3, 3, 4, 4}, "3*(-r*m + q^2)*sin(theta)^2/r", Trust::audit},
    {"DC", {2, 4, 3, 4, 3}, "3*(-r*m + q^2)*sin(theta)^2/r", Trust::audit},
    {"DC", {3, 4, 3, 4, 1}, "-2*sin(theta)^2*(r*mp - q2p)", Trust::audit},
    {"DC", {3, 4, 3, 4, 2}, "2*(3*r*m - 4*q^2)*sin(theta)^2/r", Trust::audit},

    {"cir", {1, 2, 1, 2}, "(2*r*m - 3*q^2)/r^4", Trust::audit},
    {"cir", {1, 3, 1, 3}, "(12*r^2*m^2 + (6*r^2 - 2*r^4*lam)*q^2 + 6*q^4 - 2*m*l6 + 3*r^3*(-2*r*mp + q2p))/(6*r^4)", Trust::audit},
    {"cir", {1, 3, 2, 3}, "(r*m - q^2)/r^2", Trust::audit},
    {"cir", {3, 4, 3, 4}, "(-2*r*m + q^2)*sin(theta)^2", Trust::audit},

    {"har", {1, 2, 1, 2}, "-2*lam/3 + (2*r*m - 2*q^2)/r^4", Trust::audit},
    {"har", {1, 3, 1, 3}, "(2*r^4*lam + 3*r*m - 3*q^2)*(-3*r^2 + l1)/(9*r^4)", Trust::audit},
    {"har", {1, 3, 2, 3}, "(2*r^4*lam + 3*r*m - 3*q^2)/(3*r^2)", Trust::audit},
    {"har", {3, 4, 3, 4}, "(2/3)*l2*sin(theta)^2", Trust::audit},

    {"P", {1, 2, 1, 1}, "(2*r*mp - q2p)/(3*r^3)", Trust::audit},
    {"P", {1, 2, 1, 2}, "(6*r*m - 8*q^2)/(3*r^4)", Trust::audit},
    {"P", {1, 2, 2, 1}, "(6*r*m - 8*q^2)/(3*r^4)", Trust::audit},
    {"P", {1, 3, 1, 3}, "(36*r^2*m^2 - 8*r^2*(-3 + r^2*lam)*q^2 + 24*q^4 + 6*m*(-3*r^3 + r^5*lam - 11*r*q^2) + 3*r^3*(-2*r*mp + q2p))/(18*r^4)", Trust::audit},
    {"P", {1, 3, 2, 3}, "(3*r*m - 4*q^2)/(3*r^2)", Trust::audit},
    {"P", {2, 3, 1, 3}, "(3*r*m - 4*q^2)/(3*r^2)", Trust::audit},
    {"P", {1, 3, 3, 1}, "(-36*r^2*m^2 + 4*r^2*(-3 + r^2*lam)*q^2 - 12*q^4 + 6*r*m*(3*r^2 - r^4*lam + 7*q^2) + 9*r^3*(2*r*mp - q2p))/(18*r^4)", Trust::audit},
    {"P", {1, 3, 3, 2}, "(-3*r*m + 2*q^2)/(3*r^2)", Trust::audit},
    {"P", {2, 3, 3, 1}, "(-3*r*m + 2*q^2)/(3*r^2)", Trust::audit},
    {"P", {3, 4, 3, 4}, "(2/3)*(-3*r*m + 2*q^2)*sin(theta)^2", Trust::audit},
    {"P", {3, 4, 4, 3}, "-(2/3)*(-3*r*m + 2*q^2)*sin(theta)^2", Trust::audit},

    {"RR", {1, 3, 1, 3, 1, 2}, "-l3*(2*r*mp - q2p)/(3*r^5)", Trust::audit},
    {"RR", {1, 2, 1, 3, 1, 3}, "l3*(2*r*mp - q2p)/(6*r^5)", Trust::audit},
    {"RR", {1, 2, 2, 3, 1, 3}, "-l2*(3*r*m - 4*q^2)/(3*r^6)", Trust::audit},
    {"RR", {1, 2, 1, 3, 2, 3}, "l2*(3*r*m - 4*q^2)/(3*r^6)", Trust::audit},
    {"RR", {1, 4, 3, 4, 1, 3}, "sin(theta)^2*(2*(-3*r^2 + l1)*(3*r*m - 2*q^2)*l2 - 6*r^4*l4 + mp + 3*r^3*l4*q2p)/(18*r^6)", Trust::audit},
    {"RR", {2, 4, 3, 4, 1, 3}, "(3*r*m - 2*q^2)*l2*sin(theta)^2/(3*r^4)", Trust::audit},

    {"CC", {1, 2, 2, 3, 1, 3}, "3*(-r*m + q^2)^2/r^6", Trust::audit},
    {"CC", {1, 2, 1, 3, 2, 3}, "-3*(-r*m + q^2)^2/r^6", Trust::audit},
    {"CC", {1, 4, 3, 4, 1, 3}, "-(-3*r^2 + l1)*(-r*m + q^2)^2*sin(theta)^2/r^6", Trust::audit},
    {"CC", {2, 4, 3, 4, 1, 3}, "-3*(-r*m + q^2)^2*sin(theta)^2/r^4", Trust::audit},
    {"CC", {1, 2, 2, 4, 1, 4}, "3*(-r*m + q^2)^2*sin(theta)^2/r^6", Trust::audit},

    {"QgR", {1, 3, 1, 3, 1, 2}, "-2*mp + q2p/r", Trust::audit},
    {"QgR", {1, 2, 1, 3, 1, 3}, "mp - q2p/(2*r)", Trust::audit},
    {"QgR", {1, 2, 2, 3, 1, 3}, "-(-3*r*m + 4*q^2)/r^2", Trust::audit},
    {"QgR", {1, 2, 1, 4, 2, 4}, "(3*r*m - 4*q^2)*sin(theta)^2/r^2", Trust::audit},
    {"QgR", {1, 4, 3, 4, 1, 3}, "sin(theta)^2*(36*r^2*m^2 - 4*r^2*(-3 + r^2*lam)*q^2 + 12*q^4 + 6*m*(l6 - 16*r*q^2) + 3*r^3*(-2*r*mp + q2p))/(6*r^2)", Trust::audit},
    {"QgR", {2, 4, 3, 4, 1, 3}, "(3*r*m - 2*q^2)*sin(theta)^2", Trust::audit},

    {"QSR", {1, 3, 1, 3, 1, 2}, "-l3*(2*r*mp - q2p)/(3*r^5)", Trust::audit},
    {"QSR", {1, 2, 1, 3, 1, 3}, "l3*(2*r*mp - q2p)/(6*r^5)", Trust::audit},
    {"QSR", {1, 2, 2, 3, 1, 3}, "(-3*r*m*(3*r^4*lam + q^2) + 2*q^2*(5*r^4*lam + 3*q^2))/(3*r^6)", Trust::audit},
    {"QSR", {2, 4, 3, 4, 1, 3}, "(9*r^4*lam*m - (8*r^3*lam + 3*m)*q^2)*sin(theta)^2/(3*r^3)", Trust::audit},
    {"QSR", {2, 3, 3, 4, 1, 4}, "(1/3)*(8*lam*q^2 + m*(-9*r*lam + 3*q^2/r^3))*sin(theta)^2", Trust::audit},

    {"QgC", {1, 2, 2, 3, 1, 3}, "(-3*r*m + 3*q^2)/r^2", Trust::audit},
    {"QgC", {1, 2, 1, 3, 2, 3}, "(3*r*m - 3*q^2)/r^2", Trust::audit},
    {"QgC", {1, 4, 3, 4, 1, 3}, "(-3*r^2 + l1)*(r*m - q^2)*sin(theta)^2/r^2", Trust::audit},
    {"QgC", {2, 4, 3, 4, 1, 3}, "3*(r*m - q^2)*sin(theta)^2", Trust::audit},
    {"QgC", {1, 2, 2, 4, 1, 4}, "3*(-r*m + q^2)*sin(theta)^2/r^2", Trust::audit},

    {"RC", {1, 2, 1, 3, 1, 3}, "3*(r*m - q^2)*(2*r*mp - q2p)/(2*r^5)", Trust::audit},
    {"RC", {1, 2, 2, 3, 1, 3}, "-(r*m - q^2)*l2/r^6", Trust::audit},
    {"RC", {2, 4, 3, 4, 1, 3}, "(r*m - q^2)*l2*sin(theta)^2/r^4", Trust::audit},

    {"QSC", {1, 3, 1, 3, 1, 2}, "-2*(r*m - q^2)*(2*r*mp - q2p)/r^5", Trust::audit},
    {"QSC", {1, 2, 1, 3, 1, 3}, "(r*m - q^2)*(2*r*mp - q2p)/r^5", Trust::audit},
    {"QSC", {1, 2, 2, 3, 1, 3}, "-(r*m - q^2)*(3*r^4*lam + q^2)/r^6", Trust::audit},
    {"QSC", {2, 4, 3, 4, 1, 3}, "(3*r^4*lam - q^2)*(r*m - q^2)*sin(theta)^2/r^4", Trust::audit},

    {"CR", {1, 3, 1, 3, 1, 2}, "-2*(r*m - q^2)*(2*r*mp - q2p)/r^5", Trust::audit},
    {"CR", {1, 2, 1, 3, 1, 3}, "-(r*m - q^2)*(2*r*mp - q2p)/(2*r^5)", Trust::audit},
    {"CR", {1, 2, 2, 3, 1, 3}, "(3*r*m - 4*q^2)*(r*m - q^2)/r^6", Trust::audit},
    {"CR", {2, 4, 3, 4, 1, 3}, "-(3*r*m - 2*q^2)*(r*m - q^2)*sin(theta)^2/r^4", Trust::audit},

    {"Lt", {1, 1}, "(-2*r*mp + q2p)/r^2", Trust::required},
    {"Lt", {2, 2}, "0", Trust::required},
    {"Lt", {3, 3}, "0", Trust::required},
    {"Lt", {4, 4}, "0", Trust::required},

    {"Lr", {1, 1}, "-2*(r^4*lam - 3*r*m + 3*q^2)/(3*r^3)", Trust::required},
    {"Lr", {2, 2}, "0", Trust::required},
    {"Lr", {3, 3}, "-2*r", Trust::required},
    {"Lr", {4, 4}, "-2*r*sin(theta)^2", Trust::required},

    {"Lhar", {1, 4, 1, 4}, "(2*r^4*lam + 3*r*m - 3*q^2)*(l1 - 3*r^2)*sin(2*theta)/(9*r^4)", Trust::audit},
    {"Lhar", {1, 4, 2, 4}, "(2*r^4*lam + 3*r*m - 3*q^2)*sin(2*theta)/(3*r^2)", Trust::audit},
    {"Lhar", {3, 4, 3, 4}, "(2/3)*l2*sin(2*theta)", Trust::audit},

    {"T", {1, 1}, "(r^6*lam*(-3 + r^2*lam) - r^2*(3 + 2*r^2*lam)*q^2 - 3*q^4 + 6*r*m*(r^4*lam + q^2) + 3*r^3*(-2*r*mp + q2p))/(3*r^6)", Trust::audit},
    {"T", {1, 2}, "lam + q^2/r^4", Trust::required},
    {"T", {3, 3}, "(r^4*lam - q^2)/r^2", Trust::required},
    {"T", {4, 4}, "(r^4*lam - q^2)*sin(theta)^2/r^2", Trust::required},

    {"QTR", {1, 3, 1, 3, 1, 2}, "(5*r^4*lam - 6*r*m + 9*q^2)*(2*r*mp - q2p)/(3*r^5)", Trust::audit},
    {"QTR", {1, 2, 1, 3, 1, 2}, "-(5*r^4*lam - 6*r*m + 9*q^2)*(2*r*mp - q2p)/(6*r^5)", Trust::audit},
    {"QTR", {1, 2, 2, 3, 1, 3}, "(9*r^5*lam*m - r*(14*r^3*lam + 3*m)*q^2 + 6*q^4)/(3*r^6)", Trust::audit},
    {"QTR", {2, 4, 3, 4, 1, 3}, "(4*r^3*lam*q^2 - 3*m*(3*r^4*lam + q^2))*sin(theta)^2/(8*r^3)", Trust::audit},
};

}  // namespace

FixtureTable::FixtureTable(MetricParams params) : params_(std::move(params)) {
  for (const auto& row : kRows) entries_.push_back({row.tensor, row.indices, row.source, row.trust});
}

}  // namespace curvlab
