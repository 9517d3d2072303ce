#pragma once

#include <array>
#include <string>
#include <vector>

#include "siegel/ball.hpp"
#include "siegel/int_poly.hpp"
#include "siegel/three_lines.hpp"

namespace siegel {

// Integer matrix of F* on H^2(X; Z) in the basis H, E_1, ..., E_rho.
// Column j holds the image of basis vector j.
struct ActionMatrix {
    int dim = 0;
    std::vector<std::vector<long long>> entries;  // entries[row][col]
    std::vector<std::string> labels;
    std::vector<int> form;  // diagonal of the intersection form: +1, -1, ..., -1

    long long at(int row, int col) const { return entries[row][col]; }
    long long trace() const;

    static ActionMatrix identity(int dim);
};

// K_X = -3 H + sum E_i in the basis of m.
std::vector<long long> canonical_class(const ActionMatrix& m);

std::vector<long long> act_on(const ActionMatrix& m, const std::vector<long long>& v);

// M^T J M == J, checked in exact integers.
bool preserves_form(const ActionMatrix& m);

// sigma[i] is the index (0-based) of the forward indeterminacy point reached by orbit i.
ActionMatrix quad_action_matrix(int n1, int n2, int n3, std::array<int, 3> sigma = {0, 1, 2});

ActionMatrix tl_action_matrix(const OrbitData& orbit);

// det(t I - M) in exact integers.
IntPolynomial characteristic_polynomial(const ActionMatrix& m);

struct SpectralData {
    IntPolynomial charpoly;
    ComplexBall lambda{1.0};
    double entropy = 0.0;
    IntPolynomial salem_part;
    std::vector<int> cyclo_orders;
};

SpectralData spectral_data(const ActionMatrix& m);

// det(delta I - M) as a ball; delta is an eigenvalue only if the ball contains 0.
ComplexBall delta_eigen_check(const ActionMatrix& m, const ComplexBall& delta);

long long fixed_point_bound(const ActionMatrix& m);

// Label header row followed by one whitespace-separated row per basis vector.
std::string dump_matrix(const ActionMatrix& m);

}  // namespace siegel
