#include "qwtorus/scalar.hpp"

namespace qwtorus {

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw structural_error("empty rational literal");
    std::size_t slash = s.find('/');
    const std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    auto integral = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    if (!integral(num) || !integral(den))
        throw structural_error("bad rational literal '" + s + "' (expected p or p/r)");
    mpq_class x;
    if (x.set_str(num + "/" + den, 10) != 0) throw structural_error("bad rational literal '" + s + "'");
    if (x.get_den() == 0) throw structural_error("zero denominator in '" + s + "'");
    x.canonicalize();
    return x;
}

std::string rat_to_string(const Rat& x) {
    return x.get_str();
}

} // namespace qwtorus
