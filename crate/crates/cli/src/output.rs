use serde_json::{Map, Value};

/// Outcome class of a command; each maps to a fixed exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    InvalidInput,
    NotRealizable,
    OutOfScope,
    BudgetExceeded,
    InternalInconsistency,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::InvalidInput => 1,
            Status::NotRealizable => 2,
            Status::OutOfScope => 3,
            Status::BudgetExceeded => 4,
            Status::InternalInconsistency => 5,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::InvalidInput => "invalid-input",
            Status::NotRealizable => "not-realizable",
            Status::OutOfScope => "out-of-scope",
            Status::BudgetExceeded => "budget-exceeded",
            Status::InternalInconsistency => "internal-inconsistency",
        }
    }
}

/// Ordered key/value payload of one command invocation.
#[derive(Clone, Debug)]
pub struct CommandResult {
    pub status: Status,
    pub command: &'static str,
    pub fields: Vec<(String, Value)>,
}

impl CommandResult {
    pub fn new(command: &'static str) -> Self {
        CommandResult {
            status: Status::Ok,
            command,
            fields: Vec::new(),
        }
    }

    pub fn push(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn fail(mut self, status: Status, message: impl Into<String>) -> Self {
        self.status = status;
        self.fields
            .push(("error".into(), Value::String(message.into())));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> String {
        let mut map = Map::new();
        map.insert("status".into(), Value::String(self.status.as_str().into()));
        map.insert("exit_code".into(), Value::from(self.exit_code()));
        map.insert("command".into(), Value::String(self.command.into()));
        for (k, v) in &self.fields {
            map.insert(k.clone(), v.clone());
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("values serialize");
        s.push('\n');
        s
    }

    /// `key: value` lines. Arrays of objects get one line per element.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "status: {}\nexit_code: {}\ncommand: {}\n",
            self.status.as_str(),
            self.exit_code(),
            self.command
        );
        for (k, v) in &self.fields {
            match v {
                Value::Array(items) if items.iter().any(Value::is_object) => {
                    for item in items {
                        out.push_str(&format!("{k}: {}\n", inline(item)));
                    }
                }
                _ => out.push_str(&format!("{k}: {}\n", top_level(v))),
            }
        }
        out
    }
}

fn top_level(v: &Value) -> String {
    match v {
        Value::Array(items) => items.iter().map(inline).collect::<Vec<_>>().join(" "),
        _ => inline(v),
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        Value::String(s) if s.contains(' ') => format!("\"{s}\""),
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(inline).collect();
            if items.iter().any(Value::is_array) {
                parts
                    .iter()
                    .map(|p| format!("[{p}]"))
                    .collect::<Vec<_>>()
                    .join(" ")
            } else {
                parts.join(",")
            }
        }
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}={}", inline(v)))
            .collect::<Vec<_>>()
            .join(" "),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn exit_codes_are_distinct() {
        let all = [
            Status::Ok,
            Status::InvalidInput,
            Status::NotRealizable,
            Status::OutOfScope,
            Status::BudgetExceeded,
            Status::InternalInconsistency,
        ];
        let codes: Vec<i32> = all.iter().map(|s| s.exit_code()).collect();
        assert_eq!(codes, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn text_rendering() {
        let mut r = CommandResult::new("check");
        r.push("delta", json!([1, 0, 1, 0]));
        r.push("stanley", json!({"pass": false, "index": 2}));
        r.push(
            "rows",
            json!([{"delta": [1, 0], "verdict": "yes"}, {"delta": [1, 1], "verdict": "no"}]),
        );
        r.push("reason", "stanley: fails at i=2");
        let text = r.to_text();
        assert_eq!(
            text,
            "status: ok\nexit_code: 0\ncommand: check\ndelta: 1 0 1 0\nstanley: pass=false index=2\n\
             rows: delta=1,0 verdict=yes\nrows: delta=1,1 verdict=no\nreason: \"stanley: fails at i=2\"\n"
        );
    }

    #[test]
    fn json_keeps_field_order() {
        let mut r = CommandResult::new("delta");
        r.push("z", 1).push("a", 2);
        let j = r.to_json();
        assert!(j.find("\"z\"").unwrap() < j.find("\"a\"").unwrap());
        let r = r.fail(Status::BudgetExceeded, "too big");
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["status"], "budget-exceeded");
        assert_eq!(v["exit_code"], 4);
    }
}
