// Builtin copies of the checked-in profile parameter files. A unit test
// asserts these stay byte-identical in content to profiles/*.json; regenerate
// both with tools/gen_profiles.py.

namespace hault {

extern const char* const kToyProfileJson;
const char* const kToyProfileJson = R"({
  "name": "toy",
  "q": "8388617",
  "a": "9",
  "d": "22",
  "r": "524309",
  "cofactor": "16",
  "gx": "4370277",
  "gy": "632951"
})";

extern const char* const kProductionProfileJson;
const char* const kProductionProfileJson = R"({
  "name": "production",
  "q": "21888242871839275222246405745257275088548364400416034343698204186575808495617",
  "a": "168700",
  "d": "168696",
  "r": "2736030358979909402780800718157159386076813972158567259200215660948447373041",
  "cofactor": "8",
  "gx": "358516342758523649525127563468154015622506126220229724044281060162052206790",
  "gy": "18950597308922899508734255418393467380154095681512244002334855292397492297153"
})";

}  // namespace hault
