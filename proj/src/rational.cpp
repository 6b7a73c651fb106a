#include "davinci/rational.hpp"

#include <cstdlib>

namespace davinci {

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw Error(ErrorCode::ParseError, "empty rational literal");
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            std::int64_t n = std::stoll(text.substr(0, slash));
            std::int64_t d = std::stoll(text.substr(slash + 1));
            return Rational(n, d);
        }
        auto dot = text.find('.');
        if (dot == std::string::npos) return Rational(std::stoll(text));
        // Finite decimal: sign, integer part, fractional digits.
        std::string head = text.substr(0, dot);
        std::string tail = text.substr(dot + 1);
        if (tail.size() > 15) tail = tail.substr(0, 15);
        bool negative = !head.empty() && head[0] == '-';
        std::int64_t ipart = head.empty() || head == "-" || head == "+" ? 0 : std::stoll(head);
        std::int64_t scale = 1;
        for (size_t i = 0; i < tail.size(); ++i) scale *= 10;
        std::int64_t fpart = tail.empty() ? 0 : std::stoll(tail);
        Rational mag = Rational(std::llabs(ipart)) + Rational(fpart, scale);
        return (negative || ipart < 0) ? -mag : mag;
    } catch (const std::invalid_argument&) {
        throw Error(ErrorCode::ParseError, "bad rational literal '" + text + "'");
    } catch (const std::out_of_range&) {
        throw Error(ErrorCode::ParseError, "rational literal out of range '" + text + "'");
    }
}

namespace {
// Half-plane index for CCW ordering: 0 for angle in [0, pi), 1 for [pi, 2pi).
int half_plane(const RVec2& v) {
    if (v.y.sign() > 0) return 0;
    if (v.y.sign() < 0) return 1;
    return v.x.sign() > 0 ? 0 : 1;
}
}  // namespace

bool ccw_direction_less(const RVec2& a, const RVec2& b) {
    int ha = half_plane(a);
    int hb = half_plane(b);
    if (ha != hb) return ha < hb;
    return cross(a, b).sign() > 0;
}

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedRotation: return "MalformedRotation";
        case ErrorCode::DanglingEdge: return "DanglingEdge";
        case ErrorCode::OddCharacteristic: return "OddCharacteristic";
        case ErrorCode::ConnectivityRequired: return "ConnectivityRequired";
        case ErrorCode::NotCubic: return "NotCubic";
        case ErrorCode::Disconnected: return "Disconnected";
        case ErrorCode::IdentityViolated: return "IdentityViolated";
        case ErrorCode::QuotientNotCellular: return "QuotientNotCellular";
        case ErrorCode::FitFailed: return "FitFailed";
        case ErrorCode::EmptyPatch: return "EmptyPatch";
        case ErrorCode::NonTriangularFace: return "NonTriangularFace";
        case ErrorCode::DegenerateCorner: return "DegenerateCorner";
        case ErrorCode::InvalidDepths: return "InvalidDepths";
        case ErrorCode::DegenerateJunction: return "DegenerateJunction";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

}  // namespace davinci
