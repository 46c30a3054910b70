"""Judgment guidance shown to coders in the UI and the docs.

These rules need human judgment about what an utterance means, so no
validator code enforces them; the tool can only keep them in front of
the coder.  Each card is a short, self-contained reminder.
"""

from __future__ import annotations

HELP_CARDS: tuple[dict, ...] = (
    {
        "id": "scheduling-meaning",
        "title": "Code the event, not the phrasing",
        "body": (
            "Encode the time of the meeting being arranged, not the literal "
            "words. \"Just so it ends at ten\" pins down the meeting's end, "
            "so give the record both the start already on the table and the "
            "ten o'clock end, even though the sentence only mentions the end."
        ),
    },
    {
        "id": "extended-vs-instant",
        "title": "Meetings take time",
        "body": (
            "Treat a meeting as an extended event: a named start hour does "
            "not fix the end hour, so leave the end's clock fields null. "
            "Genuinely momentary events (a reminder, a deadline) are points; "
            "give them identical start and end."
        ),
    },
    {
        "id": "viewpoint",
        "title": "Same event, same record",
        "body": (
            "\"Let's start the meeting in the afternoon\" still talks about "
            "the whole meeting, only from the viewpoint of its start. Code "
            "it exactly as you would \"let's meet in the afternoon\"; do not "
            "let the viewpoint shrink the interval."
        ),
    },
    {
        "id": "surprise-test",
        "title": "When in doubt, the surprise test",
        "body": (
            "Fill in an inferred value only when you would be surprised if "
            "it were otherwise. A meeting \"at two\" is surely afternoon; "
            "one \"at eight\" could go either way, so its time of day stays "
            "null unless earlier turns settled it."
        ),
    },
    {
        "id": "no-look-ahead",
        "title": "Only what has been said so far",
        "body": (
            "Interpret each utterance from the dialog date and the turns "
            "before it, never from later ones. If a later utterance shows an "
            "earlier entry was wrong, leave the earlier entry alone: the "
            "record reflects what a listener could know at that moment."
        ),
    },
    {
        "id": "alternatives",
        "title": "Alternatives split, ranges don't",
        "body": (
            "\"Wednesday or Friday\" is two records labeled _alt1 and _alt2; "
            "\"Tuesday and Thursday\" is two records labeled _and1 and "
            "_and2. But \"the 22nd through the 26th\" is one interval, not a "
            "list of days."
        ),
    },
    {
        "id": "end-completion",
        "title": "Reuse the start for a silent end",
        "body": (
            "When no end time is mentioned, copy the start's weekday, month, "
            "and date into the end point and leave its hour and time of day "
            "null. An all-day start keeps all-day on both points. A hedged "
            "start like (after, 25) bounds nothing, so its end stays null."
        ),
    },
    {
        "id": "specific-to-general",
        "title": "Infer from specific to general",
        "body": (
            "A start at one o'clock safely implies the meeting ends the same "
            "day; a bare weekday does not imply business hours. The more "
            "specific the mentioned time, the safer the inference drawn from "
            "it; in the other direction, prefer null."
        ),
    },
)
