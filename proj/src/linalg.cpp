#include "floq/linalg.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <limits>

#include "floq/errors.hpp"

namespace floq::linalg {

void eig(MatrixXcd& A, VectorXcd& w, MatrixXcd* V) {
    const lapack_int n = static_cast<lapack_int>(A.rows());
    if (A.cols() != n) throw invalid_input("eig: matrix must be square");
    w.resize(n);
    if (V) V->resize(n, n);
    std::complex<double> dummy;
    const lapack_int info = LAPACKE_zgeev(
        LAPACK_COL_MAJOR, 'N', V ? 'V' : 'N', n, A.data(), n, w.data(), &dummy, 1,
        V ? V->data() : &dummy, V ? n : 1);
    if (info != 0) throw numerical_error("zgeev failed, info=" + std::to_string(info));
}

VectorXd singular_values(MatrixXcd& A) {
    const lapack_int m = static_cast<lapack_int>(A.rows());
    const lapack_int n = static_cast<lapack_int>(A.cols());
    VectorXd s(std::min(m, n));
    std::complex<double> dummy;
    const lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, A.data(), m, s.data(),
                                           &dummy, 1, &dummy, 1);
    if (info != 0) throw numerical_error("zgesdd failed, info=" + std::to_string(info));
    return s;
}

std::vector<int> assignment(const MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    if (a.cols() != n) throw invalid_input("assignment: cost matrix must be square");
    const double INF = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), INF);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = INF;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = a(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> ans(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j] > 0) ans[p[j] - 1] = j - 1;
    return ans;
}

} // namespace floq::linalg
