#include "ultras/domain.hpp"

#include <algorithm>

namespace ultras {

const char* to_string(DomainKind kind) {
    switch (kind) {
        case DomainKind::boolean: return "boolean";
        case DomainKind::probability: return "probability";
        case DomainKind::rate: return "rate";
    }
    throw ContractViolation("to_string: bad DomainKind");
}

void check_value(DomainKind kind, const Rational& v) {
    switch (kind) {
        case DomainKind::boolean:
            if (v != 0 && v != 1) throw ContractViolation("boolean value must be 0 or 1");
            return;
        case DomainKind::probability:
            if (v < 0 || v > 1) throw ContractViolation("probability out of [0,1]: " + to_string(v));
            return;
        case DomainKind::rate:
            if (v < 0) throw ContractViolation("negative rate: " + to_string(v));
            return;
    }
    throw ContractViolation("check_value: bad DomainKind");
}

Rational raw_join(DomainKind kind, const Rational& a, const Rational& b) {
    if (kind == DomainKind::boolean) return std::max(a, b);
    return Rational(a + b);
}

Rational raw_product(DomainKind kind, const Rational& a, const Rational& b) {
    if (kind == DomainKind::boolean) return std::min(a, b);
    return Rational(a * b);
}

DomainValue value_join(const DomainValue& a, const DomainValue& b) {
    if (a.kind != b.kind) throw ContractViolation("value_join: domain kind mismatch");
    Rational r = raw_join(a.kind, a.value, b.value);
    check_value(a.kind, r);
    return {a.kind, std::move(r)};
}

DomainValue value_product(const DomainValue& a, const DomainValue& b) {
    if (a.kind != b.kind) throw ContractViolation("value_product: domain kind mismatch");
    Rational r = raw_product(a.kind, a.value, b.value);
    check_value(a.kind, r);
    return {a.kind, std::move(r)};
}

bool value_leq(const DomainValue& a, const DomainValue& b) {
    if (a.kind != b.kind) throw ContractViolation("value_leq: domain kind mismatch");
    return a.value <= b.value;
}

std::string to_string(const DomainValue& v) {
    if (v.kind == DomainKind::boolean) return v.value == 0 ? "false" : "true";
    return to_string(v.value);
}

}  // namespace ultras
