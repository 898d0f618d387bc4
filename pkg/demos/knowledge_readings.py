"""Knowledge operators over a past-directed model.

Read Next as "one step further into the past": world 0 is today, world 1 is
yesterday, and the window of a world is the stretch of history it still
remembers.  A small newsroom example: a fact p was published three days ago
and has been confirmed every day since; a rumour q appeared exactly once.
"""

from itl import (
    CONSENSUS,
    KDiscovered,
    KPast,
    KRigid,
    KSince,
    KnowledgeQuery,
    Letter,
    Model,
    MultiAgentModel,
    UniformWindowFrame,
    Valuation,
    eval_knowledge,
    parse_formula,
    voted_pipeline,
)

p, q = Letter("p"), Letter("q")

# days 0..5 into the past; each day remembers one day further back
frame = UniformWindowFrame(6, 1)
history = Valuation(
    {
        "p": frozenset({0, 1, 2}),  # true today, yesterday, two days ago
        "q": frozenset({2}),        # the rumour appeared two days ago only
    }
)
model = Model(frame, history)

print("single reporter, memory length m=1")
print("  p became true exactly 2 days ago and held since:",
      eval_knowledge(model, KnowledgeQuery(KPast(), p, world=0), m=2))
print("  the rumour q was ever stably acquired:",
      eval_knowledge(model, KnowledgeQuery(KPast(), q, world=0), m=1))
print("  p held at every remembered moment (rigid):",
      eval_knowledge(model, KnowledgeQuery(KRigid(), p, world=0)))
print("  p held since the rumour q appeared:",
      eval_knowledge(model, KnowledgeQuery(KSince(q), p, world=2)))
print("  p was discovered once and held since:",
      eval_knowledge(model, KnowledgeQuery(KDiscovered(), p, world=0), m=1))

print("\nthree reporters with their own notebooks")
mam = MultiAgentModel(
    frame,
    {
        "ana": history,
        "bo": Valuation({"p": frozenset({0, 1, 2, 3})}),
        "cy": Valuation({"p": frozenset({1, 2})}),
    },
)
print("  consensus on p at world 1 (all clauses must hold):",
      eval_knowledge(mam, KnowledgeQuery(CONSENSUS, p, world=1)))
print("  cy's own clause at world 1:",
      eval_knowledge(mam, KnowledgeQuery(CONSENSUS, p, world=1, agent="cy")))

table = voted_pipeline(mam, parse_formula("G p"))
print("  voted 'G p' day by day:", {day: value for day, value in table.items()})
