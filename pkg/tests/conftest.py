import pytest

from labelloop import kernels
from labelloop.corpus import Document, LabelSchema


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # pay JIT compilation before any timed test body runs
    kernels.warmup()


@pytest.fixture
def toy_schema():
    return LabelSchema(("no", "yes"))


@pytest.fixture
def toy_corpus():
    return [
        Document("d1", "a b", gold_label=0),
        Document("d2", "b c", gold_label=1),
        Document("d3", "b", gold_label=0),
    ]


# the six-message spam walkthrough; ids sort in presentation order
SPAM_TEXTS = [
    "Important notice: Your package has been delivered.",
    "Dear customer, Your account balance is low.",
    "Hi, How are you doing? Let's catch up soon.",
    "Urgent notice: Last chance to update your personal information.",
    "Hi there, You have won a free vacation! Claim now!",
    "Congratulations! You've won a million dollars!",
]
SPAM_GOLD = ["not spam", "spam", "not spam", "spam", "spam", "spam"]


@pytest.fixture
def spam_schema():
    return LabelSchema(("not spam", "spam"))


@pytest.fixture
def spam_docs(spam_schema):
    return [
        Document(f"t{i + 1}", text, gold_label=spam_schema.index_of(gold))
        for i, (text, gold) in enumerate(zip(SPAM_TEXTS, SPAM_GOLD))
    ]
