// Copyright 2026 The simaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "simaug/error.hpp"

namespace simaug {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kEmptyDataset: return "empty-dataset";
    case ErrorCode::kEmptyCore: return "empty-core";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kUndefinedRatio: return "undefined-ratio";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kSembBadMagic: return "semb-bad-magic";
    case ErrorCode::kSembBadHeader: return "semb-bad-header";
    case ErrorCode::kSembTruncated: return "semb-truncated";
    case ErrorCode::kSembCountMismatch: return "semb-count-mismatch";
    case ErrorCode::kSembNonFinite: return "semb-non-finite";
    case ErrorCode::kDuplicateId: return "duplicate-id";
    case ErrorCode::kMissingEmbeddings: return "missing-embeddings";
    case ErrorCode::kDegenerateVector: return "degenerate-vector";
    case ErrorCode::kEmptyIndexList: return "empty-index-list";
    case ErrorCode::kEmptyUnpopular: return "empty-unpopular";
    case ErrorCode::kMisaligned: return "misaligned";
    case ErrorCode::kIntegrity: return "integrity";
    case ErrorCode::kNonFiniteLoss: return "non-finite-loss";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kUndefinedCorrelation: return "undefined-correlation";
  }
  return "unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace simaug
