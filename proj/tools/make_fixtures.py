#!/usr/bin/env python3
"""Generate the synthetic health-care-debate corpus under data/fixtures/.

Everything is drawn from one seeded RNG, so reruns are byte-identical.
Signals are deliberately uneven: prior-polarity words carry little class
information, while users, topical vocabulary, hashtags, emoticons and
linked articles carry more. Outputs:

  synthetic/train.tsv, synthetic/test.tsv   id, user_id, target, label, text
  synthetic/url_cache/<sha256(url)>.json    cached first paragraphs
  stacking30.tsv                            10 tweets per class
"""
import hashlib
import json
import pathlib
import random

ROOT = pathlib.Path(__file__).resolve().parent.parent / "data" / "fixtures"
SEED = 20140324
CLASSES = ["negative", "neutral", "positive"]
WEIGHTS = [0.5, 0.25, 0.25]

TOPIC = {
    "negative": ["repeal", "defund", "mandate", "socialism", "premiums", "rationing", "deficit",
                 "taxes", "bureaucrats", "waivers", "penalty", "glitch", "website", "delay"],
    "neutral": ["hearing", "schedule", "committee", "session", "amendment", "report", "summary",
                "timeline", "briefing", "update", "markup", "testimony", "transcript", "agenda"],
    "positive": ["coverage", "enroll", "preexisting", "signup", "medicaid", "exchanges",
                 "subsidies", "insured", "access", "prevention", "checkups", "families",
                 "children", "clinics"],
}
SHARED = ["obamacare", "health", "insurance", "senate", "congress", "people", "today", "plan",
          "doctors", "patients", "reform", "house", "president", "state", "week", "news"]
HASHTAGS = {
    "negative": ["killthebill", "tcot", "repealit", "stopobamacare", "defundit"],
    "neutral": ["hcr", "healthcare", "senatevote", "cspan", "livenow"],
    "positive": ["passit", "getcovered", "hcrworks", "thanksobama", "coveredtoday"],
}
POS_WORDS = ["good", "great", "love", "happy", "support", "win", "help", "proud", "fair", "nice"]
NEG_WORDS = ["bad", "hate", "terrible", "lie", "fail", "disaster", "stupid", "worst", "fraud",
             "mess"]
EMO = {"positive": [":)", ":-)", "=)", ":D"], "negative": [":(", ":-(", ":/", "=("]}
TARGETS = ["obamacare", "hcr", "senate"]
ARTICLE_SENTENCES = {
    "positive": ["Families are happy with the great new coverage.",
                 "Supporters celebrate a wonderful victory for patients.",
                 "Clinics report excellent progress and real relief.",
                 "Enrollment success is a proud moment for the state."],
    "negative": ["Critics call the rollout a terrible disaster.",
                 "Premiums rise and families suffer real damage.",
                 "The website failure is a shameful mess.",
                 "Opponents warn of a costly crisis and broken promises."],
    "neutral": ["The committee meets on Tuesday.",
                "The report lists the schedule for the hearing.",
                "Officials published the enrollment figures.",
                "The session will be broadcast live."],
}


def pick_class(rng, own, loyalty):
    if rng.random() < loyalty:
        return own
    return rng.choice([c for c in CLASSES if c != own])


def make_articles(rng):
    articles = []
    for i in range(60):
        cls = CLASSES[i % 3]
        sentences = []
        for _ in range(rng.randint(2, 4)):
            sentences.append(rng.choice(ARTICLE_SENTENCES[pick_class(rng, cls, 0.8)]))
        url = f"http://news.example.org/story/{i:03d}"
        articles.append((cls, url, " ".join(sentences)))
    return articles


def make_users(rng, n):
    users = []
    for i in range(n):
        cls = rng.choices(CLASSES, WEIGHTS)[0]
        users.append((f"u{i:03d}", cls))
    return users


def make_tweet(rng, cls, articles):
    words = []
    for _ in range(rng.randint(3, 6)):
        if rng.random() < 0.45:
            words.append(rng.choice(TOPIC[pick_class(rng, cls, 0.7)]))
        else:
            words.append(rng.choice(SHARED))
    # Prior polarity is only weakly tied to the class.
    if rng.random() < 0.6:
        lean = {"positive": 0.58, "negative": 0.42, "neutral": 0.5}[cls]
        w = rng.choice(POS_WORDS if rng.random() < lean else NEG_WORDS)
        if rng.random() < 0.15:
            w = "not " + w
        words.insert(rng.randrange(len(words) + 1), w)
    if rng.random() < 0.2:
        i = rng.randrange(len(words))
        words[i] = words[i].upper()
    text = " ".join(words)
    if rng.random() < 0.25:
        text = "@" + rng.choice(["senate", "whitehouse", "gop", "thedemocrats", "cnn"]) + " " + text
    if rng.random() < 0.55:
        text += " #" + rng.choice(HASHTAGS[pick_class(rng, cls, 0.75)])
    if cls != "neutral" and rng.random() < 0.35:
        other = "negative" if cls == "positive" else "positive"
        text += " " + rng.choice(EMO[cls if rng.random() < 0.8 else other])
    elif cls == "neutral" and rng.random() < 0.1:
        text += " " + rng.choice(EMO[rng.choice(["positive", "negative"])])
    if rng.random() < 0.4:
        want = pick_class(rng, cls, 0.85)
        url = rng.choice([a for a in articles if a[0] == want])[1]
        text += " " + url
    if rng.random() < 0.15:
        text = "RT " + text
    return text


def build(rng, users, articles, n, start_id, extra_labels=False):
    rows = []
    for i in range(n):
        user, lean = rng.choice(users)
        cls = pick_class(rng, lean, 0.9)
        target = rng.choice(TARGETS)
        rows.append((f"t{start_id + i:05d}", user, target, cls, make_tweet(rng, cls, articles)))
    if extra_labels:
        for j, label in enumerate(["unsure", "irrelevant", "unsure", "irrelevant"]):
            user, lean = rng.choice(users)
            rows.append((f"x{start_id + j:05d}", user, rng.choice(TARGETS), label,
                         make_tweet(rng, lean, articles)))
    return rows


def write_tsv(path, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = ["id\tuser_id\ttarget\tlabel\ttext"] + ["\t".join(r) for r in rows]
    path.write_text("\n".join(lines) + "\n")


def main():
    rng = random.Random(SEED)
    articles = make_articles(rng)
    users = make_users(rng, 120)
    train = build(rng, users, articles, 360, 0, extra_labels=True)
    test = build(rng, users, articles, 180, 10000)
    out = ROOT / "synthetic"
    write_tsv(out / "train.tsv", train)
    write_tsv(out / "test.tsv", test)

    cache = out / "url_cache"
    cache.mkdir(parents=True, exist_ok=True)
    for old in cache.glob("*.json"):
        old.unlink()
    for _, url, paragraph in articles:
        key = hashlib.sha256(url.encode()).hexdigest()
        doc = {"url": url, "first_paragraph": paragraph, "fetched_at": "2014-03-24T00:00:00Z"}
        (cache / f"{key}.json").write_text(json.dumps(doc) + "\n")

    small = []
    for cls in CLASSES:
        small += [r for r in train if r[3] == cls][:10]
    write_tsv(ROOT / "stacking30.tsv", small)


if __name__ == "__main__":
    main()
