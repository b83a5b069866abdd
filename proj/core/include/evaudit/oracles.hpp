#pragma once

// Helpfulness and answer-accuracy oracles.
//
// The overlap-based implementations are deterministic stand-ins used for
// scoring fixtures, probe calibration, and the simulator. The remote
// implementations call an HTTP endpoint that speaks a one-route JSON
// protocol:
//
//   POST /score
//     {"kind":"helpfulness","question":q,"evidence":[{...items...}]}
//       -> {"value": v}  with v in [0,1]
//     {"kind":"judge","question":q,"answer":a,"evidence":[...]}
//       -> {"value": v}  with v in {0, 0.5, 1}
//
// Any transport error, malformed reply, or out-of-range value raises
// OracleFailure — remote scores are never clamped or rounded.

#include <stdexcept>
#include <string>
#include <vector>

#include "evaudit/protocol.hpp"

namespace evaudit {

class OracleFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class HelpfulnessOracle {
public:
    virtual ~HelpfulnessOracle() = default;

    // Estimate in [0,1] of how useful `evidence` is for answering
    // `question`.
    virtual double score(const std::string& question,
                         const std::vector<ReferenceItem>& evidence) = 0;
};

class Judge {
public:
    virtual ~Judge() = default;

    // Evidence-grounded accuracy of `answer`, in {0, 0.5, 1}.
    virtual double score(const std::string& question,
                         const std::string& answer,
                         const std::vector<ReferenceItem>& evidence) = 0;
};

// Fraction of the question's distinct tokens that appear anywhere in the
// evidence contents. Monotone in lexical overlap; 0 for empty questions or
// empty evidence. Function words count, deliberately: replacing evidence
// with prose about anything at all yields a small positive score, while a
// blanked-out evidence list scores 0.
class OverlapHelpfulnessOracle : public HelpfulnessOracle {
public:
    double score(const std::string& question,
                 const std::vector<ReferenceItem>& evidence) override;
};

// Containment of the normalized answer tokens in the evidence token pool:
// full containment scores 1, at least half scores 0.5, anything less 0.
// Empty answers score 0.
class OverlapJudge : public Judge {
public:
    double score(const std::string& question, const std::string& answer,
                 const std::vector<ReferenceItem>& evidence) override;
};

class RemoteHelpfulnessOracle : public HelpfulnessOracle {
public:
    // base_url like "http://127.0.0.1:8080".
    explicit RemoteHelpfulnessOracle(std::string base_url);
    double score(const std::string& question,
                 const std::vector<ReferenceItem>& evidence) override;

private:
    std::string base_url_;
};

class RemoteJudge : public Judge {
public:
    explicit RemoteJudge(std::string base_url);
    double score(const std::string& question, const std::string& answer,
                 const std::vector<ReferenceItem>& evidence) override;

private:
    std::string base_url_;
};

}  // namespace evaudit
