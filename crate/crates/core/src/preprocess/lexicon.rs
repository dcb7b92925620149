//! Bundled word lists for the tagger, the temporal rules and vectorization.

pub(crate) const DETERMINERS: &[&str] = &[
    "the", "a", "an", "this", "these", "those", "each", "every", "any", "some", "no", "all", "both", "either",
    "neither", "another",
];

pub(crate) const PREPOSITIONS: &[&str] = &[
    "about",
    "above",
    "across",
    "after",
    "against",
    "along",
    "among",
    "around",
    "as",
    "at",
    "because",
    "before",
    "behind",
    "below",
    "beneath",
    "beside",
    "besides",
    "between",
    "beyond",
    "by",
    "despite",
    "during",
    "except",
    "for",
    "from",
    "if",
    "in",
    "inside",
    "into",
    "like",
    "near",
    "of",
    "on",
    "onto",
    "outside",
    "over",
    "per",
    "since",
    "than",
    "through",
    "throughout",
    "till",
    "toward",
    "towards",
    "under",
    "unless",
    "until",
    "upon",
    "via",
    "whether",
    "while",
    "with",
    "within",
    "without",
    "although",
    "though",
    "whereas",
    "unlike",
    "amongst",
    "regarding",
    "concerning",
    "including",
    "following",
];

pub(crate) const CONJUNCTIONS: &[&str] = &["and", "or", "but", "nor", "plus", "&", "and/or"];

pub(crate) const MODALS: &[&str] = &[
    "shall", "should", "will", "would", "can", "could", "may", "might", "must", "ought", "cannot", "'ll",
];

pub(crate) const PERSONAL_PRONOUNS: &[&str] = &[
    "i",
    "you",
    "he",
    "she",
    "it",
    "we",
    "they",
    "me",
    "him",
    "us",
    "them",
    "itself",
    "themselves",
    "himself",
    "herself",
    "ourselves",
    "yourself",
    "myself",
    "one's",
];

pub(crate) const POSSESSIVE_PRONOUNS: &[&str] = &["my", "your", "his", "its", "our", "their", "her"];

pub(crate) const ADVERBS: &[&str] = &[
    "also",
    "not",
    "n't",
    "never",
    "always",
    "only",
    "very",
    "well",
    "now",
    "then",
    "here",
    "however",
    "again",
    "still",
    "already",
    "often",
    "soon",
    "too",
    "just",
    "even",
    "ever",
    "yet",
    "almost",
    "quite",
    "rather",
    "instead",
    "once",
    "twice",
    "thus",
    "therefore",
    "else",
    "further",
    "forward",
    "back",
    "away",
    "together",
    "ago",
    "anytime",
    "anywhere",
    "everywhere",
    "so",
    "hard",
    "maybe",
    "perhaps",
    "otherwise",
    "later",
    "up",
    "down",
    "out",
    "off",
    "somewhere",
    "nowhere",
    "afterwards",
    "beforehand",
    "meanwhile",
    "moreover",
    "furthermore",
    "hence",
    "indeed",
    "alone",
    "online",
    "offline",
    "upfront",
    "asap",
];

/// Adjectives the suffix rules would miss, including `-ly` adjectives.
pub(crate) const ADJECTIVES: &[&str] = &[
    "able",
    "available",
    "new",
    "old",
    "good",
    "bad",
    "easy",
    "fast",
    "slow",
    "secure",
    "simple",
    "clear",
    "current",
    "different",
    "same",
    "high",
    "low",
    "large",
    "small",
    "full",
    "main",
    "many",
    "much",
    "few",
    "several",
    "other",
    "own",
    "real",
    "safe",
    "short",
    "long",
    "quick",
    "timely",
    "prompt",
    "immediate",
    "specific",
    "standard",
    "valid",
    "invalid",
    "unique",
    "due",
    "free",
    "key",
    "last",
    "next",
    "previous",
    "prior",
    "public",
    "private",
    "ready",
    "recent",
    "relevant",
    "reliable",
    "responsive",
    "robust",
    "separate",
    "single",
    "stable",
    "strong",
    "sufficient",
    "total",
    "true",
    "false",
    "up-to-date",
    "visible",
    "whole",
    "wide",
    "appropriate",
    "accurate",
    "adequate",
    "consistent",
    "correct",
    "complete",
    "compatible",
    "common",
    "entire",
    "final",
    "general",
    "initial",
    "legal",
    "local",
    "maximum",
    "minimum",
    "multiple",
    "necessary",
    "normal",
    "open",
    "original",
    "particular",
    "possible",
    "primary",
    "proper",
    "readable",
    "reasonable",
    "similar",
    "simultaneous",
    "various",
    "average",
    "big",
    "busy",
    "cheap",
    "clean",
    "close",
    "concurrent",
    "critical",
    "dark",
    "difficult",
    "early",
    "effective",
    "efficient",
    "english",
    "extra",
    "familiar",
    "fine",
    "friendly",
    "user-friendly",
    "intuitive",
    "late",
    "light",
    "likely",
    "live",
    "manual",
    "mobile",
    "modern",
    "nice",
    "optional",
    "peak",
    "physical",
    "pleasant",
    "poor",
    "professional",
    "quiet",
    "rapid",
    "rare",
    "rich",
    "secret",
    "sensitive",
    "serious",
    "smooth",
    "special",
    "strict",
    "technical",
    "unavailable",
    "unable",
    "usable",
    "useful",
    "daily",
    "weekly",
    "monthly",
    "yearly",
    "annual",
    "hourly",
    "nightly",
    "costly",
    "lovely",
    "elderly",
    "such",
    "acceptable",
    "able",
    "aware",
    "certain",
    "consistent",
    "external",
    "internal",
    "least",
    "same",
    "top",
    "bottom",
    "ugly",
    "easy-to-use",
    "straightforward",
    "accessible",
    "red",
    "green",
    "blue",
    "white",
    "black",
    "yellow",
    "gray",
    "grey",
    "bright",
    "bold",
    "least",
    "wrong",
    "minor",
    "major",
    "actual",
    "additional",
    "basic",
    "central",
    "comprehensive",
    "corporate",
    "commercial",
    "dynamic",
    "electronic",
    "federal",
    "financial",
    "functional",
    "global",
    "graphical",
    "historical",
    "individual",
    "logical",
    "medical",
    "national",
    "numerical",
    "official",
    "operational",
    "optimal",
    "personal",
    "potential",
    "practical",
    "regional",
    "social",
    "statistical",
    "temporary",
    "traditional",
    "typical",
    "universal",
    "virtual",
    "visual",
    "vertical",
    "horizontal",
    "remote",
    "prompt",
    "rapid",
    "speedy",
    "swift",
    "instant",
];

pub(crate) const IRREGULAR_COMPARATIVES: &[&str] = &[
    "better", "worse", "more", "less", "fewer", "greater", "higher", "lower", "faster", "slower", "larger", "smaller",
    "easier", "longer", "shorter", "earlier", "later", "bigger", "quicker", "simpler", "stronger", "safer",
];

pub(crate) const IRREGULAR_SUPERLATIVES: &[&str] = &[
    "best",
    "worst",
    "most",
    "least",
    "fewest",
    "greatest",
    "highest",
    "lowest",
    "fastest",
    "slowest",
    "largest",
    "smallest",
    "easiest",
    "longest",
    "shortest",
    "earliest",
    "latest",
    "biggest",
    "quickest",
    "simplest",
    "strongest",
    "safest",
];

/// Base-form verbs. Words also listed in `NOUN_VERBS` are ambiguous and
/// resolved by context.
pub(crate) const VERBS: &[&str] = &[
    "allow",
    "add",
    "adhere",
    "apply",
    "approve",
    "assign",
    "calculate",
    "cancel",
    "choose",
    "comply",
    "configure",
    "contain",
    "create",
    "delete",
    "deliver",
    "deny",
    "enable",
    "encrypt",
    "ensure",
    "enter",
    "fail",
    "generate",
    "handle",
    "include",
    "indicate",
    "install",
    "keep",
    "launch",
    "let",
    "load",
    "maintain",
    "make",
    "manage",
    "meet",
    "modify",
    "monitor",
    "notify",
    "obtain",
    "operate",
    "perform",
    "permit",
    "prevent",
    "produce",
    "protect",
    "provide",
    "purchase",
    "receive",
    "recover",
    "refresh",
    "register",
    "reject",
    "remove",
    "require",
    "respond",
    "restore",
    "retrieve",
    "run",
    "save",
    "select",
    "send",
    "show",
    "specify",
    "store",
    "submit",
    "validate",
    "verify",
    "get",
    "take",
    "go",
    "see",
    "give",
    "find",
    "know",
    "follow",
    "read",
    "write",
    "understand",
    "learn",
    "reach",
    "migrate",
    "conform",
    "appear",
    "exceed",
    "achieve",
    "assist",
    "communicate",
    "connect",
    "continue",
    "correct",
    "define",
    "determine",
    "establish",
    "exist",
    "fix",
    "identify",
    "interact",
    "locate",
    "occur",
    "prefer",
    "prepare",
    "present",
    "reduce",
    "remain",
    "replace",
    "resolve",
    "restrict",
    "share",
    "close",
    "collect",
    "complete",
    "confirm",
    "consist",
    "customize",
    "describe",
    "detect",
    "fill",
    "grant",
    "hide",
    "highlight",
    "insert",
    "integrate",
    "navigate",
    "organize",
    "pay",
    "preview",
    "publish",
    "recognize",
    "recommend",
    "refer",
    "remind",
    "rename",
    "repeat",
    "reserve",
    "reuse",
    "rotate",
    "scroll",
    "sell",
    "simulate",
    "translate",
    "undo",
    "visit",
    "wait",
    "want",
    "warn",
    "authenticate",
    "authorize",
    "prohibit",
    "display",
    "access",
    "update",
    "search",
    "view",
    "use",
    "support",
    "log",
    "login",
    "logon",
    "print",
    "process",
    "record",
    "report",
    "request",
    "reset",
    "return",
    "review",
    "scan",
    "schedule",
    "sort",
    "start",
    "stop",
    "track",
    "transfer",
    "upload",
    "download",
    "work",
    "change",
    "check",
    "control",
    "export",
    "import",
    "input",
    "interface",
    "list",
    "need",
    "order",
    "post",
    "test",
    "upgrade",
    "backup",
    "alert",
    "email",
    "filter",
    "format",
    "help",
    "map",
    "release",
    "edit",
    "limit",
    "match",
    "mark",
    "rate",
    "sign",
    "type",
    "place",
    "set",
    "sync",
    "tag",
    "train",
    "query",
    "comment",
    "estimate",
    "design",
    "answer",
    "name",
    "scale",
    "increase",
    "decrease",
    "handle",
    "host",
    "list",
    "move",
    "open",
    "become",
    "seem",
    "look",
    "feel",
    "sound",
    "tolerate",
    "withstand",
    "handle",
    "backup",
    "archive",
    "audit",
    "restart",
    "recover",
    "log",
    "display",
    "permit",
    "expire",
    "lock",
    "unlock",
    "purge",
    "retain",
    "sustain",
];

pub(crate) const NOUN_VERBS: &[&str] = &[
    "access",
    "display",
    "update",
    "search",
    "view",
    "use",
    "support",
    "log",
    "login",
    "logon",
    "print",
    "process",
    "record",
    "report",
    "request",
    "reset",
    "return",
    "review",
    "scan",
    "schedule",
    "sort",
    "start",
    "stop",
    "track",
    "transfer",
    "upload",
    "download",
    "work",
    "change",
    "check",
    "control",
    "export",
    "import",
    "input",
    "interface",
    "list",
    "need",
    "order",
    "post",
    "test",
    "upgrade",
    "backup",
    "alert",
    "email",
    "filter",
    "format",
    "help",
    "map",
    "release",
    "edit",
    "limit",
    "match",
    "mark",
    "rate",
    "sign",
    "type",
    "place",
    "set",
    "sync",
    "tag",
    "train",
    "query",
    "comment",
    "estimate",
    "design",
    "answer",
    "name",
    "scale",
    "increase",
    "decrease",
    "host",
    "move",
    "archive",
    "audit",
    "restart",
    "lock",
    "look",
    "feel",
    "sound",
    "run",
    "load",
    "purchase",
    "design",
    "fix",
    "close",
    "present",
    "share",
    "visit",
    "wait",
    "show",
    "state",
    "archive",
];

pub(crate) const NUMBER_WORDS: &[&str] = &[
    "zero",
    "one",
    "two",
    "three",
    "four",
    "five",
    "six",
    "seven",
    "eight",
    "nine",
    "ten",
    "eleven",
    "twelve",
    "thirteen",
    "fourteen",
    "fifteen",
    "sixteen",
    "seventeen",
    "eighteen",
    "nineteen",
    "twenty",
    "thirty",
    "forty",
    "fifty",
    "sixty",
    "seventy",
    "eighty",
    "ninety",
    "hundred",
    "thousand",
    "million",
    "billion",
];

/// Stop words removed before building term vectors.
pub(crate) const STOP_WORDS: &[&str] = &[
    "a",
    "about",
    "above",
    "after",
    "again",
    "against",
    "all",
    "also",
    "am",
    "an",
    "and",
    "any",
    "are",
    "as",
    "at",
    "be",
    "because",
    "been",
    "before",
    "being",
    "below",
    "between",
    "both",
    "but",
    "by",
    "can",
    "cannot",
    "could",
    "did",
    "do",
    "does",
    "doing",
    "down",
    "during",
    "each",
    "either",
    "etc",
    "e.g.",
    "etc.",
    "few",
    "for",
    "from",
    "further",
    "had",
    "has",
    "have",
    "having",
    "he",
    "her",
    "here",
    "hers",
    "herself",
    "him",
    "himself",
    "his",
    "how",
    "i",
    "i.e.",
    "if",
    "in",
    "into",
    "is",
    "it",
    "its",
    "itself",
    "may",
    "me",
    "might",
    "more",
    "most",
    "must",
    "my",
    "myself",
    "no",
    "nor",
    "not",
    "of",
    "off",
    "on",
    "once",
    "only",
    "or",
    "other",
    "ought",
    "our",
    "ours",
    "ourselves",
    "out",
    "over",
    "own",
    "per",
    "same",
    "shall",
    "she",
    "should",
    "so",
    "some",
    "such",
    "than",
    "that",
    "the",
    "their",
    "theirs",
    "them",
    "themselves",
    "then",
    "there",
    "these",
    "they",
    "this",
    "those",
    "through",
    "to",
    "too",
    "under",
    "until",
    "up",
    "upon",
    "very",
    "via",
    "was",
    "we",
    "were",
    "what",
    "when",
    "where",
    "which",
    "while",
    "who",
    "whom",
    "whose",
    "why",
    "will",
    "with",
    "within",
    "would",
    "you",
    "your",
    "yours",
    "yourself",
    "yourselves",
    "'s",
    "n't",
    "'t",
];

pub(crate) const TIME_UNITS: &[(&str, &str)] = &[
    ("millisecond", "MS"),
    ("milliseconds", "MS"),
    ("ms", "MS"),
    ("second", "S"),
    ("seconds", "S"),
    ("minute", "M"),
    ("minutes", "M"),
    ("hour", "H"),
    ("hours", "H"),
    ("hrs", "H"),
    ("day", "D"),
    ("days", "D"),
    ("business day", "D"),
    ("week", "W"),
    ("weeks", "W"),
    ("month", "MO"),
    ("months", "MO"),
    ("year", "Y"),
    ("years", "Y"),
];

pub(crate) fn contains(list: &[&str], w: &str) -> bool {
    list.contains(&w)
}
