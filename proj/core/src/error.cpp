#include "weft/error.hpp"

namespace weft {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NonInvertibleDenominator: return "NonInvertibleDenominator";
    case Errc::CompositeModulus: return "CompositeModulus";
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::DanglingChild: return "DanglingChild";
    case Errc::MultipleOutputs: return "MultipleOutputs";
    case Errc::InvalidCircuit: return "InvalidCircuit";
    case Errc::DenominatorZeroAtPoint: return "DenominatorZeroAtPoint";
    case Errc::EnumerationCapExceeded: return "EnumerationCapExceeded";
    case Errc::TermCapExceeded: return "TermCapExceeded";
    case Errc::SubsetBlowup: return "SubsetBlowup";
    case Errc::DuplicateNodes: return "DuplicateNodes";
    case Errc::SizeCapExceeded: return "SizeCapExceeded";
    case Errc::WeftTooHigh: return "WeftTooHigh";
    case Errc::DepthCapExceeded: return "DepthCapExceeded";
    case Errc::InsufficientFieldPoints: return "InsufficientFieldPoints";
    case Errc::NoValidShiftFound: return "NoValidShiftFound";
    case Errc::DegreeBoundViolated: return "DegreeBoundViolated";
    case Errc::CharacteristicTooSmall: return "CharacteristicTooSmall";
    case Errc::KPlusOneNotPrime: return "KPlusOneNotPrime";
    case Errc::ParameterOutOfRange: return "ParameterOutOfRange";
    case Errc::EdgeNotFound: return "EdgeNotFound";
    case Errc::InvalidMinorModel: return "InvalidMinorModel";
    case Errc::TooManyColors: return "TooManyColors";
    case Errc::LayoutMismatch: return "LayoutMismatch";
    case Errc::IdentityCheckFailed: return "IdentityCheckFailed";
    case Errc::ParseError: return "ParseError";
  }
  return "UnknownError";
}

}  // namespace weft
