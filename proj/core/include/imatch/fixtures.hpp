#pragma once

#include "imatch/market.hpp"

// Worked examples used by tests, the acceptance suite and `imatch demo`.
// All indices are zero-based: d1 is doctor 0, h1 is hospital 0.
namespace imatch::fixtures {

// Four doctors and four hospitals where letting d1 accept a second interview
// leaves d2 and d3 worse off and destabilizes the final match.
Market hoarding_market();
Arrangement hoarding_before();  // hospitals (1,1,2,2), doctors (1,2,1,1)
Arrangement hoarding_after();   // doctors (2,2,1,1)

InterviewMatching hoarding_interviews_before();
InterviewMatching hoarding_interviews_after();
Matching hoarding_matching_before();
Matching hoarding_matching_after();

// 4 doctors, 3 hospitals: one doctor with 3 interviews and the rest with 2,
// one hospital with 4 and the rest with 2. `doctor` and `hospital` pick
// which agents get the larger capacity.
Arrangement mixed_common_arrangement(int doctor, int hospital);

}  // namespace imatch::fixtures
