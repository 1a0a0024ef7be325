# core/checker.py
def check_assignment(instance, assignment):
    """
    Independent support checker.

    Returns the problems found with ``assignment`` (normalized values, one per
    variable); an empty list means it is a support of the instance.
    """
    problems = []
    if len(assignment) != instance.n:
        return [f"expected {instance.n} values, got {len(assignment)}"]

    for index, value in enumerate(assignment):
        if value not in instance.domains[index]:
            problems.append(f"{instance.name(index)}={value} outside its domain")

    seen = {}
    for index, value in enumerate(assignment):
        if value in seen:
            problems.append(
                f"{instance.name(seen[value])} and {instance.name(index)} share value {value}"
            )
        else:
            seen[value] = index

    for i, j in sorted(instance.graph.edges):
        if not assignment[i] < assignment[j]:
            problems.append(
                f"{instance.name(i)}={assignment[i]} must be below {instance.name(j)}={assignment[j]}"
            )
    return problems


def in_box(bounds, assignment):
    return all(dom.lb <= v <= dom.ub for dom, v in zip(bounds, assignment))
