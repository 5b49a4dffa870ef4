from typing import Type

from runtime.operator_definition import Operator


class Catalog:
    """Represent a group of operators on a single sourcecode.

    For an operator to be usable, it needs to extend the Operator class and be registered in the catalog.
    Even when considering the redundancy and opportunity for user error, it has been deemed better than:
    - scanning the library at runtime (too much overhead)
    - a more complex import system based on project-specific conventions (not obvious)
    """

    def __init__(
        self, name: str, operators: list[Type[Operator]], description: str = ""
    ):
        """Library name (as id)"""
        self.name: str = name
        self.description: str = description
        self.operators: dict[str, Type[Operator]] = {op.meta_name: op for op in operators}

        if len(self.operators) != len(operators):
            raise ValueError(f"Catalog {name} registers two operators with the same name.")

    def get_operator(self, name: str) -> Type[Operator]:
        try:
            return self.operators[name]
        except KeyError:
            raise KeyError(
                f"Operator '{name}' is not part of the catalog '{self.name}'."
            ) from None
