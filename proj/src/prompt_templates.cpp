// Text resources for the prompt builders. Kept out of prompting.cpp so the
// wording can be tuned without touching logic.

#include "fraudlens/prompting.hpp"

#include <array>

#include "fraudlens/errors.hpp"

namespace fraudlens {
namespace {

const std::array<std::string, kTacticCount> kTacticDefinitions = {
    // Reconnaissance
    "The offender gathers information about the target before making any contact. Look for signs "
    "that the caller or sender already knew the victim's name, phone number, employer, family "
    "details, recent purchases, or account activity, or that the victim's social media profiles, "
    "leaked databases, or public listings were studied in advance. A victim wondering how a "
    "stranger knew private details is a strong indicator. Mere availability of a phone number is "
    "not enough; there must be evidence of deliberate profiling or targeting.",
    // Resource Development
    "The offender acquires or prepares the assets and infrastructure used to run the scheme. "
    "Indicators include fake websites, cloned apps, spoofed caller identities, purchased SIM "
    "cards, rented office or call-center space, recruited mule accounts, forged letters or "
    "identity cards, fabricated profiles, and staged payment portals. The narrative usually "
    "reveals this through artifacts the victim encountered: a convincing portal, an app sent as "
    "a file, a professional-looking document, or a realistic impersonation setup.",
    // Initial Contact
    "The first deceptive communication that opens the interaction with the victim. Typical forms "
    "are unsolicited phone calls, SMS or messaging-app texts, emails, social media or matrimonial "
    "site messages, job-portal offers, or advertisements the victim clicked. Mark this label for "
    "the opening move of the scheme, whoever nominally spoke first: a victim responding to a "
    "planted advertisement still counts because the advertisement was the bait.",
    // Detonation
    "The moment the victim is induced to take the harmful action that the scheme was built "
    "around. Examples: sharing an OTP or PIN, installing a remote-access or spyware application, "
    "approving a transfer, paying a fee, revealing card numbers, or entering credentials on a "
    "fake page. The action is taken by the victim under the offender's influence and directly "
    "enables the loss. Distinguish it from the harm itself: detonation is the trigger pulled, "
    "impact is the damage done.",
    // Persistence
    "The offender keeps the victim engaged over time to extend or repeat exploitation. Evidence "
    "includes repeated calls or messages across days or weeks, recurring payment demands, daily "
    "tasks, sustained romantic or advisory chats, renewed threats, or remote access maintained "
    "well past the first session. A single short interaction does not qualify; look for an "
    "ongoing relationship the offender works to keep alive.",
    // Escalation
    "The scheme widens from the initial compromise toward higher-stakes abuse. Indicators: small "
    "demands that grow into much larger ones, data captured in one fraud reused to run another, "
    "harvested identity used to open accounts or loans, or the victim moved from a minor pretext "
    "into a larger staged operation. The defining element is progression to a materially bigger "
    "or qualitatively new level of criminal activity.",
    // Defense Evasion
    "Steps taken to obscure the offender's identity, location, or money trail. Look for VoIP or "
    "constantly changing numbers, refusal to appear on video, VPN mentions, conversion of funds "
    "to cryptocurrency, rapid layering across many accounts, untraceable wallets, instructions "
    "to delete chats or keep the matter secret from banks and police, and similar concealment "
    "behavior embedded in the narrative.",
    // Credential Harvesting
    "Sensitive authentication or identity data is extracted from the victim: passwords, OTPs, "
    "PINs, card numbers and CVVs, net-banking logins, government identity numbers, or recovery "
    "codes. The channel may be a phishing page, a fake verification call, a remote-access "
    "session, a malicious app, or plain persuasion. The essence is that secrets meant to guard "
    "accounts end up in the offender's hands.",
    // Discovery
    "After gaining access or trust, the offender explores the victim's data and situation to "
    "deepen the exploitation. Examples: browsing contacts, photo galleries, or chat history "
    "through a remote session or spyware; learning account balances before striking; locating "
    "compromising material to use later. Mark it when the narrative shows the offender learning "
    "things from inside the victim's devices or accounts.",
    // Pivoting
    "A compromised victim becomes a springboard to reach further victims. Indicators: scam "
    "messages sent from the victim's number or profile to their contacts, the victim's identity "
    "used to lend credibility to new approaches, an infected device spreading malicious links, "
    "or the victim pressed to recruit friends and family into the scheme.",
    // Collection
    "Valuable information is captured from the victim's devices or accounts: recorded calls, "
    "copied chats, exported statements, harvested photos or videos, scraped documents, or files "
    "pulled through spyware and screen-sharing sessions. Collection is about gathering material "
    "of value; whether it later leaves the victim's control is a separate question.",
    // Command and Control
    "The offender directly steers or coerces the victim's ongoing behavior. Strong signs: "
    "step-by-step orders the victim obeys in real time, demands to stay on the line or remain "
    "on camera, isolation instructions forbidding contact with family or police, or devices "
    "operated remotely by the offender. The relationship looks like an operator controlling an "
    "asset rather than a one-off deception.",
    // Exfiltration
    "Money or data actually leaves the victim's control: completed transfers to mule accounts "
    "or wallets, withdrawals, crypto conversions that move value out, or personal data shipped "
    "to offender-controlled channels. Attempted but blocked transfers are weaker evidence; the "
    "label is strongest when value demonstrably moved out.",
    // Impact
    "The harm inflicted on the victim: financial loss amounts, drained or frozen accounts, debt "
    "incurred, identity misuse, reputational damage, or psychological distress described in the "
    "narrative. Most complete narratives include impact; capture the concrete consequences the "
    "victim reports.",
};

const std::array<std::string, kTheoryCount> kTheoryDefinitions = {
    // Fear and Intimidation
    "Compliance is driven by threat and dread: arrest warnings, fabricated criminal cases, "
    "account-freezing notices, threats to harm reputation or family, or exposure of private "
    "material. The victim acts primarily to avoid a feared outcome, with potential losses "
    "looming far larger than any promised gain.",
    // Urgency and Scarcity
    "Pressure comes from compressed time or limited availability: deadlines of minutes or "
    "hours, offers that expire today, the last few slots, penalties for delay, or demands to "
    "act before checking with anyone. The shortage of time or supply is engineered to prevent "
    "deliberate evaluation.",
    // Authority, Social Proof, and Impersonation
    "The offender borrows the weight of institutions or crowds: impersonating police, bank "
    "officials, customs or tax officers, courts, company executives, or customer support; or "
    "staging consensus through fake testimonials, screenshots of others' profits, busy "
    "investor groups, and official-looking documents. The victim defers to perceived expertise "
    "or to what everyone else appears to be doing.",
    // Consistency and Reciprocity
    "Small commitments or favors are leveraged into larger ones. Patterns: a trivial paid task "
    "that is generously rewarded before bigger deposits are requested, free gifts or refunds "
    "that create a sense of obligation, or sunk-cost appeals pointing at fees already paid so "
    "the victim keeps going to stay consistent with earlier choices.",
    // Phantom Riches
    "An improbable large reward is dangled: lottery or prize winnings, guaranteed high-return "
    "investments, jackpot tips, inheritance shares, or goods priced far below value. The victim "
    "overweights a low-probability windfall and pays fees or deposits chasing it.",
    // Emotional Exploitation
    "Affection, empathy, loneliness, or shame is the lever: romance and companionship built "
    "over weeks, sympathy stories and emergencies, flattery and emotional dependency, or the "
    "humiliation pressure of intimate-image blackmail. The emotional bond or exposure risk "
    "bypasses the victim's analytical judgment.",
};

const std::array<std::string, kFraudTypeCount> kFraudTypeDefinitions = {
    "Fake or bait advertisements draw victims into paying for goods, services, or offers that "
    "do not exist.",
    "The offender poses as customer care or technical support, often through fake helpline "
    "numbers, and walks the victim into payments or remote access.",
    "Parcel-stuck-at-customs pretexts, long-con relationship investment grooming, or "
    "matrimonial-site personas that end in money extraction.",
    "Fraudulent investment platforms or advisors promising outsized returns on stocks, "
    "portfolios, or trading schemes.",
    "Fake insurance policies, bonus payouts, or premium-refund pretexts used to collect fees "
    "and personal data.",
    "Bogus job offers, placement fees, or paid task schemes that monetize job seekers.",
    "Instant-loan apps or agents that extract fees, inflate dues, or harvest contacts for "
    "harassment.",
    "Intimate-image or video blackmail demanding payment to prevent exposure.",
    "Impersonated police or agencies place the victim under fictitious digital arrest and "
    "extract transfers as bail, verification, or settlement.",
    "Cryptocurrency investment schemes: fake exchanges, wallet top-ups, or guided trading that "
    "absorbs deposits.",
};

}  // namespace

const std::string& label_definition(LabelId id) {
    if (id.kind == LabelKind::Tactic) return kTacticDefinitions.at(static_cast<size_t>(id.index));
    return kTheoryDefinitions.at(static_cast<size_t>(id.index));
}

const std::string& fraud_type_definition(int fraud_type) {
    return kFraudTypeDefinitions.at(static_cast<size_t>(fraud_type));
}

}  // namespace fraudlens
