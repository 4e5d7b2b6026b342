#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "qpred/operators.hpp"
#include "qpred/rng.hpp"
#include "test_support.hpp"

using namespace qpred;
using ts::max_abs_diff;

namespace {

Matrix bloch_x_state() {
    // 0.5 (I + 0.6 X): eigenvalues 0.2 and 0.8 in the |-+> basis.
    Matrix m(2, 2);
    m << Complex(0.5), Complex(0.3), Complex(0.3), Complex(0.5);
    return m;
}

}  // namespace

TEST_CASE("hermitian operator validates its input") {
    CHECK_THROWS_AS(HermitianOperator(Matrix::Zero(2, 3)), Error);

    Matrix bad(2, 2);
    bad << Complex(0.0), Complex(0.0, 1.0), Complex(0.0, 1.0), Complex(0.0);
    CHECK_THROWS_AS(HermitianOperator{bad}, NonHermitianError);

    Matrix ok(2, 2);
    ok << Complex(1.0), Complex(0.0, 1.0), Complex(0.0, -1.0), Complex(2.0);
    const HermitianOperator h(ok);
    CHECK(h.dim() == 2);
    CHECK(max_abs_diff(h.matrix(), ok) == 0.0);

    // deviation within tolerance is accepted
    Matrix near = ok;
    near(0, 1) += Complex(0.0, 5e-13);
    CHECK_NOTHROW(HermitianOperator{near});
}

TEST_CASE("density operator validates trace and positivity") {
    CHECK_NOTHROW(DensityOperator(ts::diag2(0.5, 0.5)));
    CHECK_THROWS_AS(DensityOperator(ts::diag2(0.6, 0.6)), Error);           // trace 1.2
    CHECK_THROWS_AS(DensityOperator(ts::diag2(1.5, -0.5)), NotPositiveError);

    // eigenvalue -5e-11 is inside the PSD tolerance
    CHECK_NOTHROW(DensityOperator(ts::diag2(-5e-11, 1.0 + 5e-11)));

    const DensityOperator rho(bloch_x_state());
    CHECK(rho.dim() == 2);
}

TEST_CASE("eigh orders eigenvalues ascending and matches the closed form") {
    const Spectrum s_id = eigh(HermitianOperator(Matrix::Identity(2, 2)));
    CHECK_ABS(s_id.eigenvalues[0], 1.0, 1e-15);
    CHECK_ABS(s_id.eigenvalues[1], 1.0, 1e-15);

    const Spectrum s_diag = eigh(HermitianOperator(ts::diag2(0.8, 0.2)));
    CHECK_ABS(s_diag.eigenvalues[0], 0.2, 1e-15);
    CHECK_ABS(s_diag.eigenvalues[1], 0.8, 1e-15);

    // closed-form oracle: eigenvalues 0.2 and 0.8
    const Spectrum s = eigh(HermitianOperator(bloch_x_state()));
    const ts::Eig2 oracle = ts::eig2(bloch_x_state());
    CHECK_ABS(s.eigenvalues[0], oracle.lo, 1e-14);
    CHECK_ABS(s.eigenvalues[1], oracle.hi, 1e-14);
    CHECK_ABS(s.eigenvalues[0], 0.2, 1e-14);
    CHECK_ABS(s.eigenvalues[1], 0.8, 1e-14);
}

TEST_CASE("eigh reconstructs and is unitary on random inputs") {
    Rng rng(11001);
    for (int dim : {2, 3, 4, 8, 16, 64}) {
        const HermitianOperator a(ts::rand_hermitian(rng, dim));
        const Spectrum s = eigh(a);
        const Matrix rebuilt = s.eigenvectors
                             * s.eigenvalues.cast<Complex>().asDiagonal()
                             * s.eigenvectors.adjoint();
        CHECK_LE(max_abs_diff(rebuilt, a.matrix()), 1e-10);
        CHECK_LE(max_abs_diff(s.eigenvectors.adjoint() * s.eigenvectors,
                              Matrix::Identity(dim, dim)), 1e-10);
        for (int i = 0; i + 1 < dim; ++i) {
            CHECK_LE(s.eigenvalues[i], s.eigenvalues[i + 1]);
        }
    }
}

TEST_CASE("matrix_power reproduces closed forms") {
    const HermitianOperator id(Matrix::Identity(2, 2));
    CHECK_LE(max_abs_diff(matrix_power(id, 0.5).matrix(), Matrix::Identity(2, 2)), 1e-14);

    const HermitianOperator d(ts::diag2(0.25, 0.75));
    const Matrix root = matrix_power(d, 0.5).matrix();
    CHECK_ABS(root(0, 0).real(), 0.5, 1e-14);
    CHECK_ABS(root(1, 1).real(), 0.8660254037844386, 1e-14);
    CHECK_ABS(std::abs(root(0, 1)), 0.0, 1e-14);

    // oracle-frozen: sqrt of 0.5 (I + 0.6 X) has diagonal (sqrt(0.8)+sqrt(0.2))/2
    // and off-diagonal (sqrt(0.8)-sqrt(0.2))/2
    const Matrix s = matrix_power(HermitianOperator(bloch_x_state()), 0.5).matrix();
    CHECK_ABS(s(0, 0).real(), 0.6708203932499369, 1e-12);
    CHECK_ABS(s(1, 1).real(), 0.6708203932499369, 1e-12);
    CHECK_ABS(s(0, 1).real(), 0.22360679774997896, 1e-12);
    const Matrix s_oracle = ts::apply2(bloch_x_state(),
                                       [](double x) { return std::sqrt(x); });
    CHECK_LE(max_abs_diff(s, s_oracle), 1e-13);
}

TEST_CASE("matrix_power properties and support handling") {
    Rng rng(11002);

    // semigroup on positive definite samples, including negative exponents
    for (int rep = 0; rep < 20; ++rep) {
        const int dim = 2 + static_cast<int>(rng.uniform() * 3);
        const DensityOperator rho = rng.random_density(dim, 0.2);
        const HermitianOperator a = rho.hermitian();
        for (double p : {0.5, 1.5, -0.5}) {
            for (double q : {0.5, 2.0}) {
                const Matrix lhs = matrix_power(matrix_power(a, p), q).matrix();
                const Matrix rhs = matrix_power(a, p * q).matrix();
                CHECK_LE(max_abs_diff(lhs, rhs), 1e-9);
            }
        }
        CHECK_LE(max_abs_diff(matrix_power(a, 1.0).matrix(), a.matrix()), 1e-12);
    }

    // zero eigenvalues: positive powers extend by zero, negative powers throw
    Matrix proj = ts::diag2(1.0, 0.0);
    CHECK_LE(max_abs_diff(matrix_power(HermitianOperator(proj), 0.5).matrix(), proj), 1e-12);
    CHECK_THROWS_AS(matrix_power(HermitianOperator(proj), -0.5), SingularPowerError);
    CHECK_THROWS_AS(matrix_power(HermitianOperator(proj), -2.0), SingularPowerError);

    // not positive semidefinite at all
    CHECK_THROWS_AS(matrix_power(HermitianOperator(ts::diag2(1.0, -0.5)), 0.5),
                    NotPositiveError);
}

TEST_CASE("matrix_log matches the closed form and rejects singular input") {
    CHECK_LE(max_abs_diff(matrix_log(HermitianOperator(Matrix::Identity(3, 3))).matrix(),
                          Matrix::Zero(3, 3)), 1e-14);

    const Matrix l = matrix_log(HermitianOperator(ts::diag2(std::exp(1.0), 1.0))).matrix();
    CHECK_ABS(l(0, 0).real(), 1.0, 1e-13);
    CHECK_ABS(l(1, 1).real(), 0.0, 1e-13);

    // oracle-frozen: log of 0.5 (I + 0.6 X) has diagonal (ln 0.8 + ln 0.2)/2
    // = -0.916291 and off-diagonal (ln 0.8 - ln 0.2)/2 = ln(4)/2 = 0.693147
    const Matrix lb = matrix_log(HermitianOperator(bloch_x_state())).matrix();
    CHECK_ABS(lb(0, 0).real(), -0.9162907318741551, 1e-12);
    CHECK_ABS(lb(0, 1).real(), 0.6931471805599453, 1e-12);
    const Matrix lb_oracle = ts::apply2(bloch_x_state(),
                                        [](double x) { return std::log(x); });
    CHECK_LE(max_abs_diff(lb, lb_oracle), 1e-13);

    CHECK_THROWS_AS(matrix_log(HermitianOperator(ts::diag2(1.0, 0.0))), SingularLogError);
}

TEST_CASE("matrix_exp inverts matrix_log") {
    CHECK_LE(max_abs_diff(matrix_exp(HermitianOperator(Matrix::Zero(2, 2))).matrix(),
                          Matrix::Identity(2, 2)), 1e-14);

    const Matrix e = matrix_exp(HermitianOperator(ts::diag2(0.0, std::log(2.0)))).matrix();
    CHECK_ABS(e(0, 0).real(), 1.0, 1e-13);
    CHECK_ABS(e(1, 1).real(), 2.0, 1e-13);

    Rng rng(11003);
    for (int rep = 0; rep < 10; ++rep) {
        const DensityOperator rho = rng.random_density(3, 0.2);
        const Matrix round = matrix_exp(matrix_log(rho.hermitian())).matrix();
        CHECK_LE(max_abs_diff(round, rho.matrix()), 1e-10);

        const HermitianOperator h(ts::rand_hermitian(rng, 3, 0.5));
        const Matrix round2 = matrix_log(matrix_exp(h)).matrix();
        CHECK_LE(max_abs_diff(round2, h.matrix()), 1e-10);
    }
}

TEST_CASE("tensor products follow the row-major index convention") {
    const HermitianOperator id2(Matrix::Identity(2, 2));
    CHECK(max_abs_diff(tensor_product(id2, id2).matrix(), Matrix::Identity(4, 4)) == 0.0);

    // |0><0| (x) |1><1| occupies composite index 0*2+1 = 1
    const Matrix p = tensor_product(HermitianOperator(ts::diag2(1.0, 0.0)),
                                    HermitianOperator(ts::diag2(0.0, 1.0))).matrix();
    Matrix expected = Matrix::Zero(4, 4);
    expected(1, 1) = 1.0;
    CHECK(max_abs_diff(p, expected) == 0.0);

    Rng rng(11004);
    for (int rep = 0; rep < 10; ++rep) {
        // dyadic entries make all products exact, so the index-convention and
        // associativity checks can demand bitwise equality
        const Matrix a = ts::rand_dyadic(rng, 2);
        const Matrix b = ts::rand_dyadic(rng, 3);
        const Matrix c = ts::rand_dyadic(rng, 2);
        CHECK(max_abs_diff(tensor_product(a, b), ts::kron_manual(a, b)) == 0.0);
        CHECK(max_abs_diff(tensor_product(tensor_product(a, b), c),
                           tensor_product(a, tensor_product(b, c))) == 0.0);
    }

    // trace multiplicativity on generic samples
    for (int rep = 0; rep < 5; ++rep) {
        const Matrix a = ts::rand_hermitian(rng, 2);
        const Matrix b = ts::rand_hermitian(rng, 3);
        const Complex t = tensor_product(a, b).trace();
        CHECK_ABS(t.real(), (a.trace() * b.trace()).real(), 1e-12);
    }
}

TEST_CASE("tensor_power caches copies and guards the dimension limit") {
    const DensityOperator rho(ts::diag2(0.3, 0.7));

    const Matrix one = tensor_power(rho, 1).matrix();
    CHECK(max_abs_diff(one, rho.matrix()) == 0.0);

    const Matrix two = tensor_power(rho, 2).matrix();
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = 0.09;
    expected(1, 1) = 0.21;
    expected(2, 2) = 0.21;
    expected(3, 3) = 0.49;
    CHECK_LE(max_abs_diff(two, expected), 1e-15);
    CHECK_ABS(two.trace().real(), 1.0, 1e-9);

    // eigenvalues multiply across factors
    Rng rng(11005);
    const DensityOperator r = rng.random_density(2, 0.1);
    const Spectrum s1 = eigh(r.hermitian());
    const Spectrum s3 = eigh(tensor_power(r, 3).hermitian());
    std::vector<double> products;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                products.push_back(s1.eigenvalues[i] * s1.eigenvalues[j] * s1.eigenvalues[k]);
    std::sort(products.begin(), products.end());
    for (int i = 0; i < 8; ++i) CHECK_ABS(s3.eigenvalues[i], products[i], 1e-12);

    CHECK_NOTHROW(tensor_power(rho, 12));                      // 4096 == limit
    CHECK_THROWS_AS(tensor_power(rho, 13), DimensionOverflowError);
    CHECK_NOTHROW(tensor_power(rho, 13, 10000));               // custom limit
    CHECK_THROWS_AS(tensor_power(rho, 0), ValidationError);
}

TEST_CASE("validate_povm checks positivity, completeness and labels") {
    std::vector<HermitianOperator> basis{HermitianOperator(ts::diag2(1.0, 0.0)),
                                         HermitianOperator(ts::diag2(0.0, 1.0))};
    const Povm p = validate_povm(basis);
    CHECK(p.size() == 2);
    CHECK(p.dim() == 2);
    CHECK(p.outcomes()[0] == "0");
    CHECK(p.outcomes()[1] == "1");

    const Povm named = validate_povm(basis, {"down", "up"});
    CHECK(named.outcomes()[1] == "up");
    CHECK_THROWS_AS(validate_povm(basis, {"only-one"}), ValidationError);

    std::vector<HermitianOperator> halves{HermitianOperator(ts::diag2(0.5, 0.5)),
                                          HermitianOperator(ts::diag2(0.5, 0.5))};
    CHECK_NOTHROW(validate_povm(halves));

    std::vector<HermitianOperator> incomplete{HermitianOperator(ts::diag2(0.6, 0.6))};
    CHECK_THROWS_AS(validate_povm(incomplete), NotCompleteError);

    std::vector<HermitianOperator> negative{HermitianOperator(ts::diag2(1.5, 0.0)),
                                            HermitianOperator(ts::diag2(-0.5, 1.0))};
    CHECK_THROWS_AS(validate_povm(negative), NotPositiveError);

    std::vector<HermitianOperator> mixed_dims{HermitianOperator(Matrix::Identity(2, 2)),
                                              HermitianOperator(Matrix::Identity(3, 3))};
    CHECK_THROWS_AS(validate_povm(mixed_dims), DimensionMismatchError);
}

TEST_CASE("trace norm helpers") {
    CHECK_ABS(trace_norm(ts::diag2(0.5, -0.25)), 0.75, 1e-14);
    const DensityOperator a(ts::diag2(1.0, 0.0));
    const DensityOperator b(ts::diag2(0.0, 1.0));
    CHECK_ABS(trace_distance(a, b), 2.0, 1e-12);
    CHECK_ABS(trace_distance(a, a), 0.0, 1e-14);

    const DensityOperator mixed = convex_mix(a, 0.5, b);
    CHECK_LE(max_abs_diff(mixed.matrix(), 0.5 * Matrix::Identity(2, 2)), 1e-15);
    CHECK_LE(max_abs_diff(maximally_mixed(4).matrix(), 0.25 * Matrix::Identity(4, 4)), 1e-15);
}
