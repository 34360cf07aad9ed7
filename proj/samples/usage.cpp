// Library walkthrough: load a recurrence, check it, certify it, forge a bound.
//
//   logmono_usage samples/schroeder.seq

#include <logmono/logmono.hpp>

#include <iostream>

using namespace logmono;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: logmono_usage FILE.seq\n";
    return 3;
  }
  try {
    TermCache c(load_spec_file(argv[1]));
    const auto& spec = c.spec();
    std::cout << spec.name << ": u(n) = " << to_string(*spec.u) << ", v(n) = " << to_string(*spec.v) << "\n";
    std::cout << "first terms:";
    for (const auto& t : c.terms(c.first_index(), c.first_index() + 9)) std::cout << " " << t.str();
    std::cout << "\n";

    long lo = std::max(c.valid_from() + 2, 2L);
    for (const auto& v : {check_ratio_logconcave(c, lo, 200), check_root_logconcave(c, lo, 60)}) {
      std::cout << v.predicate << " on [" << v.start << "," << v.end << "]: "
                << (v.holds ? "holds" : "fails at " + std::to_string(*v.first_failure)) << "\n";
    }

    // the sign of v decides which bound the ratio argument needs
    BoundKind kind = spec.v->eval(lo).sign() > 0 ? BoundKind::lower : BoundKind::upper;
    ForgeResult r = forge(c, kind);
    if (!r.bound) {
      std::cout << "forge (" << to_string(kind) << "): " << r.trace.failure << "\n";
      return 2;
    }
    std::cout << "forged " << to_string(kind) << " bound: " << to_string(*r.bound) << "\n";
    std::cout << "ratio log-concave from n=" << r.certificate->conclusion_from << " (" << status_of(*r.certificate)
              << ", hypotheses from " << r.certificate->hypotheses_from << ")\n";

    // push the conclusion down as far as an exact prefix check allows
    Certificate merged = *r.certificate;
    for (long m = c.valid_from(); m < r.certificate->conclusion_from; ++m) {
      Certificate s = stitch_prefix(c, *r.certificate, m);
      if (s.holds) {
        merged = std::move(s);
        break;
      }
    }
    std::cout << "with the exact prefix: from n=" << merged.conclusion_from << ", "
              << (merged.holds ? "holds" : merged.failure) << "\n";
    std::cout << certificate_document(merged).dump(2).substr(0, 600) << "\n...\n";
    return merged.holds ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
