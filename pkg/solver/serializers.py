from rest_framework import serializers

from .routes import FAST, ROUTES
from .search import ASCENDING, ASSIGN, BRANCHINGS, MIN_DOMAIN, VALUE_ORDERS, VAR_ORDERS


# ===============================================================
# 📄 INSTANCE DOCUMENT
# ===============================================================
class VariableSerializer(serializers.Serializer):
    """Either ``min`` and ``max``, or an explicit ``values`` list."""

    name = serializers.CharField(max_length=64)
    min = serializers.IntegerField(required=False)
    max = serializers.IntegerField(required=False)
    values = serializers.ListField(child=serializers.IntegerField(), required=False, allow_empty=False)

    def validate_name(self, value):
        if any(ch.isspace() or ch == "#" for ch in value):
            raise serializers.ValidationError("names may not contain whitespace or '#'")
        return value

    def validate(self, attrs):
        has_range = "min" in attrs or "max" in attrs
        if has_range and "values" in attrs:
            raise serializers.ValidationError("Give either min/max or values, not both.")
        if has_range:
            if "min" not in attrs or "max" not in attrs:
                raise serializers.ValidationError("min and max go together.")
            if attrs["min"] > attrs["max"]:
                raise serializers.ValidationError(f"empty domain [{attrs['min']},{attrs['max']}]")
        elif "values" not in attrs:
            raise serializers.ValidationError("A variable needs min/max or values.")
        return attrs


class InstanceDocumentSerializer(serializers.Serializer):
    version = serializers.IntegerField(default=1)
    variables = VariableSerializer(many=True, allow_empty=False)
    precedences = serializers.ListField(
        child=serializers.ListField(child=serializers.CharField(), min_length=2, max_length=2),
        required=False,
        default=list,
    )
    metadata = serializers.DictField(child=serializers.CharField(allow_blank=True), required=False, default=dict)

    def validate_version(self, value):
        if value != 1:
            raise serializers.ValidationError(f"unsupported version {value}")
        return value

    def validate_metadata(self, value):
        # each entry must survive one "meta KEY VALUE" text line
        for key, text in value.items():
            if not key or any(ch.isspace() or ch == "#" for ch in key):
                raise serializers.ValidationError(f"metadata key {key!r} may not be empty or contain whitespace or '#'")
            if "#" in text or "\n" in text or "\r" in text:
                raise serializers.ValidationError(f"metadata value of {key!r} may not contain '#' or line breaks")
        return value

    def validate(self, attrs):
        names = [var["name"] for var in attrs["variables"]]
        duplicates = sorted({name for name in names if names.count(name) > 1})
        if duplicates:
            raise serializers.ValidationError({"variables": f"duplicate names: {', '.join(duplicates)}"})
        known = set(names)
        for before, after in attrs.get("precedences", []):
            for name in (before, after):
                if name not in known:
                    raise serializers.ValidationError({"precedences": f"unknown variable {name!r}"})
        return attrs


# ===============================================================
# 🌐 API REQUESTS
# ===============================================================
class PropagateRequestSerializer(serializers.Serializer):
    instance = InstanceDocumentSerializer()
    route = serializers.ChoiceField(choices=ROUTES, default=FAST)


class SolveRequestSerializer(serializers.Serializer):
    instance = InstanceDocumentSerializer()
    route = serializers.ChoiceField(choices=ROUTES, default=FAST)
    var_order = serializers.ChoiceField(choices=VAR_ORDERS, default=MIN_DOMAIN)
    value_order = serializers.ChoiceField(choices=VALUE_ORDERS, default=ASCENDING)
    branching = serializers.ChoiceField(choices=BRANCHINGS, default=ASSIGN)
    node_limit = serializers.IntegerField(min_value=1, required=False)
    seed = serializers.IntegerField(default=0)


class BoundSerializer(serializers.Serializer):
    name = serializers.CharField()
    min = serializers.IntegerField()
    max = serializers.IntegerField()


class PropagateResponseSerializer(serializers.Serializer):
    status = serializers.CharField()
    route = serializers.CharField()
    bounds = BoundSerializer(many=True, required=False)
    changed = serializers.ListField(child=serializers.CharField(), required=False)


class SolveResponseSerializer(serializers.Serializer):
    status = serializers.CharField()
    nodes = serializers.IntegerField()
    assignment = serializers.DictField(child=serializers.IntegerField(), required=False)
