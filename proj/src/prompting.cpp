#include "fraudlens/prompting.hpp"

#include <cctype>
#include <sstream>

#include "fraudlens/errors.hpp"

namespace fraudlens {
namespace {

void append_format_spec(std::ostream& os) {
    os << "Output format. Emit exactly one section per label, in the exact order listed below. "
          "Each section has three lines: the label marker in square brackets, a Present line, "
          "and a Reason line. Write 'Present: Yes' or 'Present: No'. On the Reason line give "
          "one or two sentences of concrete evidence quoted or paraphrased from the narrative "
          "when the label is present, and write 'Reason: N/A' when it is not. Do not add any "
          "other sections, headers, or commentary.\n\n";
    for (LabelId id : all_labels()) {
        os << "[" << display_name(id) << "]\n"
           << "Present: Yes|No\n"
           << "Reason: <evidence or N/A>\n\n";
    }
}

void append_worked_example(std::ostream& os) {
    os << "Worked example of a single section. Suppose the narrative says the victim received "
          "a call from someone posing as a bank officer who asked for the OTP. The Initial "
          "Contact section would read:\n\n"
          "[Initial Contact]\n"
          "Present: Yes\n"
          "Reason: The victim received an unsolicited call from a person posing as a bank "
          "officer, which opened the fraudulent interaction.\n\n"
          "A label with no support in the narrative is reported with 'Present: No' and "
          "'Reason: N/A'. Never leave a section out, never merge sections, and never invent "
          "evidence that the narrative does not contain.\n\n";
}

}  // namespace

PromptMode prompt_mode_from_string(const std::string& name) {
    std::string key = normalize_key(name);
    if (key == "detailed") return PromptMode::Detailed;
    if (key == "concise") return PromptMode::Concise;
    throw ConfigError("unknown prompt mode: " + name);
}

const char* to_string(PromptMode mode) {
    return mode == PromptMode::Detailed ? "detailed" : "concise";
}

int approx_token_count(std::string_view text) {
    int count = 0;
    bool in_token = false;
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            in_token = false;
        } else if (!in_token) {
            in_token = true;
            ++count;
        }
    }
    return count;
}

PromptBundle build_detailed_prompt(const std::string& narrative) {
    if (narrative.empty()) throw ConfigError("narrative must be non-empty");
    std::ostringstream os;
    os << "You are an analyst decomposing a first-person cybercrime narrative into a fixed set "
          "of 20 labels: 14 operational attack-stage labels describing how the scheme was "
          "executed, and 6 behavioral-theory labels describing how the victim was manipulated. "
          "Read the narrative carefully, then decide for every label whether it is present and "
          "justify each positive decision with evidence drawn from the narrative itself. Apply "
          "the definitions below strictly; when the narrative gives no concrete support for a "
          "label, mark it absent rather than speculating.\n\n";

    os << "Attack-stage label definitions.\n\n";
    for (int i = 0; i < kTacticCount; ++i) {
        LabelId id{LabelKind::Tactic, i};
        os << display_name(id) << ": " << label_definition(id) << "\n\n";
    }
    os << "Behavioral-theory label definitions.\n\n";
    for (int i = 0; i < kTheoryCount; ++i) {
        LabelId id{LabelKind::Theory, i};
        os << display_name(id) << ": " << label_definition(id) << "\n\n";
    }

    append_format_spec(os);
    append_worked_example(os);

    os << "Decision rules. Judge each label independently on the narrative's own words; several "
          "labels commonly co-occur and marking one never forbids another. Base 'Yes' on "
          "events that actually happened in the account, not on what typically happens in such "
          "scams. Keep reasons short, specific, and grounded in the narrative. If the narrative "
          "is ambiguous about a label, prefer 'No'.\n\n";

    PromptBundle bundle;
    bundle.mode = PromptMode::Detailed;
    bundle.system_instruction = os.str() + "Narrative:";
    bundle.narrative = narrative;
    bundle.rendered = bundle.system_instruction + "\n" + narrative + "\n";
    bundle.approx_token_count = approx_token_count(bundle.system_instruction);
    return bundle;
}

PromptBundle build_concise_prompt(const std::string& narrative) {
    if (narrative.empty()) throw ConfigError("narrative must be non-empty");
    PromptBundle bundle;
    bundle.mode = PromptMode::Concise;
    bundle.system_instruction =
        "Analyze the following cybercrime narrative. Produce the standard 20-label analysis: "
        "one section per label in the canonical order, each with the bracketed label marker, a "
        "'Present: Yes' or 'Present: No' line, and a 'Reason:' line giving brief narrative "
        "evidence or N/A.\n\nNarrative:";
    bundle.narrative = narrative;
    bundle.rendered = bundle.system_instruction + "\n" + narrative + "\n";
    bundle.approx_token_count = approx_token_count(bundle.system_instruction);
    return bundle;
}

PromptBundle build_prompt(PromptMode mode, const std::string& narrative) {
    return mode == PromptMode::Detailed ? build_detailed_prompt(narrative)
                                        : build_concise_prompt(narrative);
}

std::string sanitize_reason(std::string_view reason) {
    std::string out(reason);
    for (char& c : out)
        if (c == '[') c = '(';
    return out;
}

std::string render_analysis_block(const std::array<bool, kLabelCount>& present,
                                  const std::array<std::string, kLabelCount>& reasons) {
    std::ostringstream os;
    for (int i = 0; i < kLabelCount; ++i) {
        LabelId id = label_at(i);
        bool yes = present[static_cast<size_t>(i)];
        os << "[" << display_name(id) << "]\n";
        os << "Present: " << (yes ? "Yes" : "No") << "\n";
        if (yes)
            os << "Reason: " << sanitize_reason(reasons[static_cast<size_t>(i)]) << "\n\n";
        else
            os << "Reason: N/A\n\n";
    }
    return os.str();
}

std::string render_target(const AnnotationRecord& record) {
    std::array<bool, kLabelCount> present{};
    std::array<std::string, kLabelCount> reasons{};
    for (LabelId id : all_labels()) {
        int flat = flat_index(id);
        present[static_cast<size_t>(flat)] = record.present(id);
        reasons[static_cast<size_t>(flat)] = record.reason(id);
    }
    return render_analysis_block(present, reasons);
}

std::string build_generation_prompt(const GenerationSeed& seed) {
    std::ostringstream os;
    os << "Write one synthetic cybercrime victim narrative and its full annotation as a single "
          "JSON object, following the schema exactly.\n\n";
    os << "Conditioning for this sample:\n";
    os << "- Fraud type: " << seed.fraud_type;
    if (auto idx = try_fraud_type_index(seed.fraud_type))
        os << " (" << fraud_type_definition(*idx) << ")";
    os << "\n- Designated major tactic: " << seed.major_tactic << "\n";
    os << "- Designated major behavioral theory: " << seed.major_theory << "\n";
    os << "- Sample index: " << seed.sample_index << "\n";
    os << "- Variation nonce: " << seed.nonce << "\n\n";
    os << "Vary the demographic details, amounts, channels, and writing style with the nonce so "
          "no two samples read alike. The narrative must be a first-person account of 12 to 25 "
          "lines. The designated major tactic and major theory must be marked \"Yes\" with "
          "reasons and named in Major_Tactic and Major_Theory. Mark every other label that the "
          "story genuinely supports and give a short reason for each \"Yes\". Keys: \"Story\", "
          "\"Fraud_Type\", \"Tactics\" (each tactic name and, when \"Yes\", \"<Name>_Reason\"), "
          "\"Behavioural_Theories\" (same pattern), \"Major_Tactic\", \"Major_Theory\". Output "
          "only the JSON object.\n";
    return os.str();
}

}  // namespace fraudlens
