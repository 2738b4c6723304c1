// Surveys every point of M_2(F_p) with the exhaustive decision procedure
// and tallies the verdicts. The classical unit results cover n >= 3 only;
// this prints what exact computation says about the n = 2 case.
//
// Usage: survey_m2 [p]   (default p = 5)

#include <cstdio>
#include <cstdlib>

#include "jordet/decision.hpp"

using namespace jordet;

int main(int argc, char** argv) {
    std::uint64_t p = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 5;
    auto spec = ring_create(RingKind::PrimeField, p);
    FpRing ring(spec.modulus);

    const long total = static_cast<long>(p * p * p * p);
    long determined = 0, not_determined = 0;
    Strategy<FpRing> strategy = ExhaustiveStrategy{true, 1};

    for (long c = 0; c < total; ++c) {
        Matrix<FpRing> a(ring, 2, 2);
        long t = c;
        for (int i = 0; i < 4; ++i) {
            a.a[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(t) % p;
            t /= static_cast<long>(p);
        }
        auto rep = decide(ring, a, strategy);
        if (rep.verdict == Verdict::Determined)
            ++determined;
        else {
            ++not_determined;
            std::printf("not determined: %s (span %ld / kernel %ld)\n", to_string(ring, a).c_str(),
                        rep.dim_span, rep.dim_kernel);
        }
    }

    std::printf("M_2(F_%llu): %ld points, %ld determined, %ld not determined\n",
                static_cast<unsigned long long>(p), total, determined, not_determined);

    auto e11 = unit(ring, 2, 1, 1);
    auto rep = decide(ring, e11, Strategy<FpRing>{ExhaustiveStrategy{false, 1}});
    std::printf("e_11 full sweep: dim Sym^2 = %ld, dim ker J = %ld, dim W_A = %ld, verdict %s\n",
                rep.dim_sym2, rep.dim_kernel, rep.dim_span, verdict_name(rep.verdict).c_str());
    return 0;
}
