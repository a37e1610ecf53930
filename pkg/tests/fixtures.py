"""BPMN XML fixtures with hand-enumerated state spaces.

Expected values in the tests were derived by enumerating these models on
paper; every fixture stays under 20 reachable states so the enumeration is
checkable by eye.
"""

_HEAD = '<?xml version="1.0" encoding="UTF-8"?>\n'
_DEFS_OPEN = (
    '<bpmn:definitions xmlns:bpmn="http://www.omg.org/spec/BPMN/20100524/MODEL" '
    'id="Definitions_1" targetNamespace="http://example.com/bpmn">'
)
_DEFS_CLOSE = "</bpmn:definitions>"


def _doc(body: str) -> str:
    return f"{_HEAD}{_DEFS_OPEN}\n{body}\n{_DEFS_CLOSE}\n"


# start -> task -> end; 3 states: {f0} -> {f1} -> {}
MINIMAL = _doc(
    """  <bpmn:process id="p1">
    <bpmn:startEvent id="st"/>
    <bpmn:task id="t1" name="Work"/>
    <bpmn:endEvent id="e"/>
    <bpmn:sequenceFlow id="f0" sourceRef="st" targetRef="t1"/>
    <bpmn:sequenceFlow id="f1" sourceRef="t1" targetRef="e"/>
  </bpmn:process>"""
)

# XOR split feeding an AND join: the token takes one branch, the join waits
# forever for both. 5 states; stuck markings {f3} and {f4} at depth 2.
DEADLOCK = _doc(
    """  <bpmn:process id="p1">
    <bpmn:startEvent id="st"/>
    <bpmn:exclusiveGateway id="g1"/>
    <bpmn:task id="a" name="A"/>
    <bpmn:task id="b" name="B"/>
    <bpmn:parallelGateway id="g2"/>
    <bpmn:endEvent id="e"/>
    <bpmn:sequenceFlow id="f0" sourceRef="st" targetRef="g1"/>
    <bpmn:sequenceFlow id="f1" sourceRef="g1" targetRef="a"/>
    <bpmn:sequenceFlow id="f2" sourceRef="g1" targetRef="b"/>
    <bpmn:sequenceFlow id="f3" sourceRef="a" targetRef="g2"/>
    <bpmn:sequenceFlow id="f4" sourceRef="b" targetRef="g2"/>
    <bpmn:sequenceFlow id="f5" sourceRef="g2" targetRef="e"/>
  </bpmn:process>"""
)

# AND split into an XOR join: both tokens pass the join one at a time and
# stack up on f5. 16 states; first unsafe marking {f5:2} at depth 5.
UNSAFE = _doc(
    """  <bpmn:process id="p1">
    <bpmn:startEvent id="st"/>
    <bpmn:parallelGateway id="g1"/>
    <bpmn:task id="a" name="A"/>
    <bpmn:task id="b" name="B"/>
    <bpmn:exclusiveGateway id="g2"/>
    <bpmn:endEvent id="e"/>
    <bpmn:sequenceFlow id="f0" sourceRef="st" targetRef="g1"/>
    <bpmn:sequenceFlow id="f1" sourceRef="g1" targetRef="a"/>
    <bpmn:sequenceFlow id="f2" sourceRef="g1" targetRef="b"/>
    <bpmn:sequenceFlow id="f3" sourceRef="a" targetRef="g2"/>
    <bpmn:sequenceFlow id="f4" sourceRef="b" targetRef="g2"/>
    <bpmn:sequenceFlow id="f5" sourceRef="g2" targetRef="e"/>
  </bpmn:process>"""
)

# XOR loop with no path to any end event: 7 states, all transient, cycle
# g1 -> t2 -> g2 -> back.
LIVELOCK = _doc(
    """  <bpmn:process id="p1">
    <bpmn:startEvent id="st"/>
    <bpmn:task id="t1" name="Enter"/>
    <bpmn:exclusiveGateway id="g1"/>
    <bpmn:task id="t2" name="Spin"/>
    <bpmn:exclusiveGateway id="g2"/>
    <bpmn:task id="t3" name="Detour"/>
    <bpmn:sequenceFlow id="f0" sourceRef="st" targetRef="t1"/>
    <bpmn:sequenceFlow id="f1" sourceRef="t1" targetRef="g1"/>
    <bpmn:sequenceFlow id="f2" sourceRef="g1" targetRef="t2"/>
    <bpmn:sequenceFlow id="f3" sourceRef="t2" targetRef="g2"/>
    <bpmn:sequenceFlow id="f4" sourceRef="g2" targetRef="g1"/>
    <bpmn:sequenceFlow id="f5" sourceRef="g2" targetRef="t3"/>
    <bpmn:sequenceFlow id="f6" sourceRef="t3" targetRef="g1"/>
  </bpmn:process>"""
)

# Pool A may or may not send; when it finishes without sending, pool B is
# stuck waiting at the receive task. The receive fires on the send branch,
# so it is not dead: the only defect is the starvation.
STARVATION = _doc(
    """  <bpmn:collaboration id="collab">
    <bpmn:participant id="PA" name="Customer" processRef="pA"/>
    <bpmn:participant id="PB" name="Supplier" processRef="pB"/>
    <bpmn:messageFlow id="mf1" sourceRef="snd" targetRef="rcv"/>
  </bpmn:collaboration>
  <bpmn:process id="pA">
    <bpmn:startEvent id="stA"/>
    <bpmn:exclusiveGateway id="gA"/>
    <bpmn:task id="tA" name="Skip"/>
    <bpmn:sendTask id="snd" name="Send order"/>
    <bpmn:endEvent id="eA1"/>
    <bpmn:endEvent id="eA2"/>
    <bpmn:sequenceFlow id="a0" sourceRef="stA" targetRef="gA"/>
    <bpmn:sequenceFlow id="a1" sourceRef="gA" targetRef="tA"/>
    <bpmn:sequenceFlow id="a2" sourceRef="gA" targetRef="snd"/>
    <bpmn:sequenceFlow id="a3" sourceRef="tA" targetRef="eA1"/>
    <bpmn:sequenceFlow id="a4" sourceRef="snd" targetRef="eA2"/>
  </bpmn:process>
  <bpmn:process id="pB">
    <bpmn:startEvent id="stB"/>
    <bpmn:receiveTask id="rcv" name="Receive order"/>
    <bpmn:endEvent id="eB"/>
    <bpmn:sequenceFlow id="b0" sourceRef="stB" targetRef="rcv"/>
    <bpmn:sequenceFlow id="b1" sourceRef="rcv" targetRef="eB"/>
  </bpmn:process>"""
)

# No message flow at all and nothing in pool A can send: the only repair
# is converting the receive task into a plain task.
STARVATION_NO_SENDER = _doc(
    """  <bpmn:collaboration id="collab">
    <bpmn:participant id="PA" processRef="pA"/>
    <bpmn:participant id="PB" processRef="pB"/>
  </bpmn:collaboration>
  <bpmn:process id="pA">
    <bpmn:startEvent id="stA"/>
    <bpmn:task id="tA"/>
    <bpmn:endEvent id="eA"/>
    <bpmn:sequenceFlow id="a0" sourceRef="stA" targetRef="tA"/>
    <bpmn:sequenceFlow id="a1" sourceRef="tA" targetRef="eA"/>
  </bpmn:process>
  <bpmn:process id="pB">
    <bpmn:startEvent id="stB"/>
    <bpmn:receiveTask id="rcv"/>
    <bpmn:endEvent id="eB"/>
    <bpmn:sequenceFlow id="b0" sourceRef="stB" targetRef="rcv"/>
    <bpmn:sequenceFlow id="b1" sourceRef="rcv" targetRef="eB"/>
  </bpmn:process>"""
)

# A send task that never got its message flow wired up: the repair adds it.
STARVATION_WITH_SENDER = _doc(
    """  <bpmn:collaboration id="collab">
    <bpmn:participant id="PA" processRef="pA"/>
    <bpmn:participant id="PB" processRef="pB"/>
  </bpmn:collaboration>
  <bpmn:process id="pA">
    <bpmn:startEvent id="stA"/>
    <bpmn:sendTask id="snd"/>
    <bpmn:endEvent id="eA"/>
    <bpmn:sequenceFlow id="a0" sourceRef="stA" targetRef="snd"/>
    <bpmn:sequenceFlow id="a1" sourceRef="snd" targetRef="eA"/>
  </bpmn:process>
  <bpmn:process id="pB">
    <bpmn:startEvent id="stB"/>
    <bpmn:receiveTask id="rcv"/>
    <bpmn:endEvent id="eB"/>
    <bpmn:sequenceFlow id="b0" sourceRef="stB" targetRef="rcv"/>
    <bpmn:sequenceFlow id="b1" sourceRef="rcv" targetRef="eB"/>
  </bpmn:process>"""
)

# Sound main flow plus a task chain nobody can ever reach.
DEAD_TASK = _doc(
    """  <bpmn:process id="p1">
    <bpmn:startEvent id="st"/>
    <bpmn:task id="tM" name="Main"/>
    <bpmn:endEvent id="e1"/>
    <bpmn:task id="tD1" name="Orphan 1"/>
    <bpmn:task id="tD2" name="Orphan 2"/>
    <bpmn:endEvent id="e2"/>
    <bpmn:sequenceFlow id="f0" sourceRef="st" targetRef="tM"/>
    <bpmn:sequenceFlow id="f1" sourceRef="tM" targetRef="e1"/>
    <bpmn:sequenceFlow id="h0" sourceRef="tD1" targetRef="tD2"/>
    <bpmn:sequenceFlow id="h1" sourceRef="tD2" targetRef="e2"/>
  </bpmn:process>"""
)

# Three parallel branches; two merge through an XOR join into the end the
# third branch also uses. Unsafe on f7 and the end event is reused.
REUSED_END = _doc(
    """  <bpmn:process id="p1">
    <bpmn:startEvent id="st"/>
    <bpmn:parallelGateway id="g1"/>
    <bpmn:task id="a" name="A"/>
    <bpmn:task id="b" name="B"/>
    <bpmn:task id="c" name="C"/>
    <bpmn:exclusiveGateway id="g2"/>
    <bpmn:endEvent id="e"/>
    <bpmn:sequenceFlow id="f0" sourceRef="st" targetRef="g1"/>
    <bpmn:sequenceFlow id="f1" sourceRef="g1" targetRef="a"/>
    <bpmn:sequenceFlow id="f2" sourceRef="g1" targetRef="b"/>
    <bpmn:sequenceFlow id="f3" sourceRef="g1" targetRef="c"/>
    <bpmn:sequenceFlow id="f4" sourceRef="a" targetRef="g2"/>
    <bpmn:sequenceFlow id="f5" sourceRef="b" targetRef="g2"/>
    <bpmn:sequenceFlow id="f6" sourceRef="c" targetRef="e"/>
    <bpmn:sequenceFlow id="f7" sourceRef="g2" targetRef="e"/>
  </bpmn:process>"""
)

# Message round trip between two pools; fully sound.
TWO_POOL_SOUND = _doc(
    """  <bpmn:collaboration id="collab">
    <bpmn:participant id="PA" processRef="pA"/>
    <bpmn:participant id="PB" processRef="pB"/>
    <bpmn:messageFlow id="mf1" sourceRef="snd" targetRef="rcv"/>
    <bpmn:messageFlow id="mf2" sourceRef="ack" targetRef="wait"/>
  </bpmn:collaboration>
  <bpmn:process id="pA">
    <bpmn:startEvent id="stA"/>
    <bpmn:sendTask id="snd" name="Request"/>
    <bpmn:intermediateCatchEvent id="wait" name="Await reply">
      <bpmn:messageEventDefinition id="wait_def"/>
    </bpmn:intermediateCatchEvent>
    <bpmn:endEvent id="eA"/>
    <bpmn:sequenceFlow id="a0" sourceRef="stA" targetRef="snd"/>
    <bpmn:sequenceFlow id="a1" sourceRef="snd" targetRef="wait"/>
    <bpmn:sequenceFlow id="a2" sourceRef="wait" targetRef="eA"/>
  </bpmn:process>
  <bpmn:process id="pB">
    <bpmn:startEvent id="stB"/>
    <bpmn:receiveTask id="rcv" name="Handle"/>
    <bpmn:intermediateThrowEvent id="ack" name="Reply">
      <bpmn:messageEventDefinition id="ack_def"/>
    </bpmn:intermediateThrowEvent>
    <bpmn:endEvent id="eB"/>
    <bpmn:sequenceFlow id="b0" sourceRef="stB" targetRef="rcv"/>
    <bpmn:sequenceFlow id="b1" sourceRef="rcv" targetRef="ack"/>
    <bpmn:sequenceFlow id="b2" sourceRef="ack" targetRef="eB"/>
  </bpmn:process>"""
)

# Event-based gateway choosing between two catches, driven by pool A.
EVENT_GATEWAY = _doc(
    """  <bpmn:collaboration id="collab">
    <bpmn:participant id="PA" processRef="pA"/>
    <bpmn:participant id="PB" processRef="pB"/>
    <bpmn:messageFlow id="mfYes" sourceRef="sndYes" targetRef="cYes"/>
    <bpmn:messageFlow id="mfNo" sourceRef="sndNo" targetRef="cNo"/>
  </bpmn:collaboration>
  <bpmn:process id="pA">
    <bpmn:startEvent id="stA"/>
    <bpmn:exclusiveGateway id="gA"/>
    <bpmn:sendTask id="sndYes" name="Approve"/>
    <bpmn:sendTask id="sndNo" name="Reject"/>
    <bpmn:endEvent id="eA1"/>
    <bpmn:endEvent id="eA2"/>
    <bpmn:sequenceFlow id="a0" sourceRef="stA" targetRef="gA"/>
    <bpmn:sequenceFlow id="a1" sourceRef="gA" targetRef="sndYes"/>
    <bpmn:sequenceFlow id="a2" sourceRef="gA" targetRef="sndNo"/>
    <bpmn:sequenceFlow id="a3" sourceRef="sndYes" targetRef="eA1"/>
    <bpmn:sequenceFlow id="a4" sourceRef="sndNo" targetRef="eA2"/>
  </bpmn:process>
  <bpmn:process id="pB">
    <bpmn:startEvent id="stB"/>
    <bpmn:eventBasedGateway id="ebg"/>
    <bpmn:intermediateCatchEvent id="cYes">
      <bpmn:messageEventDefinition id="cYes_def"/>
    </bpmn:intermediateCatchEvent>
    <bpmn:intermediateCatchEvent id="cNo">
      <bpmn:messageEventDefinition id="cNo_def"/>
    </bpmn:intermediateCatchEvent>
    <bpmn:task id="tYes" name="Ship"/>
    <bpmn:task id="tNo" name="Archive"/>
    <bpmn:endEvent id="eB1"/>
    <bpmn:endEvent id="eB2"/>
    <bpmn:sequenceFlow id="b0" sourceRef="stB" targetRef="ebg"/>
    <bpmn:sequenceFlow id="b1" sourceRef="ebg" targetRef="cYes"/>
    <bpmn:sequenceFlow id="b2" sourceRef="ebg" targetRef="cNo"/>
    <bpmn:sequenceFlow id="b3" sourceRef="cYes" targetRef="tYes"/>
    <bpmn:sequenceFlow id="b4" sourceRef="cNo" targetRef="tNo"/>
    <bpmn:sequenceFlow id="b5" sourceRef="tYes" targetRef="eB1"/>
    <bpmn:sequenceFlow id="b6" sourceRef="tNo" targetRef="eB2"/>
  </bpmn:process>"""
)

# Terminate end event wipes the sibling branch; 10 reachable states.
TERMINATE = _doc(
    """  <bpmn:process id="p1">
    <bpmn:startEvent id="st"/>
    <bpmn:parallelGateway id="g"/>
    <bpmn:task id="a" name="A"/>
    <bpmn:task id="b" name="B"/>
    <bpmn:task id="t2" name="Cleanup"/>
    <bpmn:endEvent id="e1">
      <bpmn:terminateEventDefinition id="term"/>
    </bpmn:endEvent>
    <bpmn:endEvent id="e2"/>
    <bpmn:sequenceFlow id="f0" sourceRef="st" targetRef="g"/>
    <bpmn:sequenceFlow id="f1" sourceRef="g" targetRef="a"/>
    <bpmn:sequenceFlow id="f2" sourceRef="g" targetRef="b"/>
    <bpmn:sequenceFlow id="f3" sourceRef="a" targetRef="e1"/>
    <bpmn:sequenceFlow id="f4" sourceRef="b" targetRef="t2"/>
    <bpmn:sequenceFlow id="f5" sourceRef="t2" targetRef="e2"/>
  </bpmn:process>"""
)

# Pool B is instantiated purely by an incoming message.
MESSAGE_START = _doc(
    """  <bpmn:collaboration id="collab">
    <bpmn:participant id="PA" processRef="pA"/>
    <bpmn:participant id="PB" processRef="pB"/>
    <bpmn:messageFlow id="mf1" sourceRef="snd" targetRef="mstB"/>
  </bpmn:collaboration>
  <bpmn:process id="pA">
    <bpmn:startEvent id="stA"/>
    <bpmn:sendTask id="snd"/>
    <bpmn:endEvent id="eA"/>
    <bpmn:sequenceFlow id="a0" sourceRef="stA" targetRef="snd"/>
    <bpmn:sequenceFlow id="a1" sourceRef="snd" targetRef="eA"/>
  </bpmn:process>
  <bpmn:process id="pB">
    <bpmn:startEvent id="mstB">
      <bpmn:messageEventDefinition id="mstB_def"/>
    </bpmn:startEvent>
    <bpmn:task id="tB"/>
    <bpmn:endEvent id="eB"/>
    <bpmn:sequenceFlow id="b0" sourceRef="mstB" targetRef="tB"/>
    <bpmn:sequenceFlow id="b1" sourceRef="tB" targetRef="eB"/>
  </bpmn:process>"""
)

# Pool A always sends; pool B may finish without consuming, leaving the
# message pending in a terminal state.
LEFTOVER_MESSAGE = _doc(
    """  <bpmn:collaboration id="collab">
    <bpmn:participant id="PA" processRef="pA"/>
    <bpmn:participant id="PB" processRef="pB"/>
    <bpmn:messageFlow id="mf1" sourceRef="snd" targetRef="rcv"/>
  </bpmn:collaboration>
  <bpmn:process id="pA">
    <bpmn:startEvent id="stA"/>
    <bpmn:sendTask id="snd"/>
    <bpmn:endEvent id="eA"/>
    <bpmn:sequenceFlow id="a0" sourceRef="stA" targetRef="snd"/>
    <bpmn:sequenceFlow id="a1" sourceRef="snd" targetRef="eA"/>
  </bpmn:process>
  <bpmn:process id="pB">
    <bpmn:startEvent id="stB"/>
    <bpmn:exclusiveGateway id="gB"/>
    <bpmn:task id="tB" name="Ignore"/>
    <bpmn:receiveTask id="rcv" name="Consume"/>
    <bpmn:endEvent id="eB1"/>
    <bpmn:endEvent id="eB2"/>
    <bpmn:sequenceFlow id="b0" sourceRef="stB" targetRef="gB"/>
    <bpmn:sequenceFlow id="b1" sourceRef="gB" targetRef="tB"/>
    <bpmn:sequenceFlow id="b2" sourceRef="gB" targetRef="rcv"/>
    <bpmn:sequenceFlow id="b3" sourceRef="tB" targetRef="eB1"/>
    <bpmn:sequenceFlow id="b4" sourceRef="rcv" targetRef="eB2"/>
  </bpmn:process>"""
)

# Contains a subProcess: rejected in strict mode, a task in lenient mode.
WITH_SUBPROCESS = _doc(
    """  <bpmn:process id="p1">
    <bpmn:startEvent id="st"/>
    <bpmn:subProcess id="sub1" name="Nested">
    </bpmn:subProcess>
    <bpmn:endEvent id="e"/>
    <bpmn:sequenceFlow id="f0" sourceRef="st" targetRef="sub1"/>
    <bpmn:sequenceFlow id="f1" sourceRef="sub1" targetRef="e"/>
  </bpmn:process>"""
)

# Task variants and foreign attributes that must survive a round trip.
TASK_VARIANTS = _doc(
    """  <bpmn:process id="p1" isExecutable="true">
    <bpmn:startEvent id="st"/>
    <bpmn:userTask id="u1" name="Review"/>
    <bpmn:serviceTask id="s1" name="Score"/>
    <bpmn:endEvent id="e"/>
    <bpmn:sequenceFlow id="f0" sourceRef="st" targetRef="u1"/>
    <bpmn:sequenceFlow id="f1" sourceRef="u1" targetRef="s1"/>
    <bpmn:sequenceFlow id="f2" sourceRef="s1" targetRef="e"/>
  </bpmn:process>"""
)

ERROR_CLASS_FIXTURES = {
    "Deadlock": DEADLOCK,
    "LackOfSynchronization": UNSAFE,
    "Livelock": LIVELOCK,
    "MessageStarvation": STARVATION,
    "DeadActivity": DEAD_TASK,
}

QUICKFIX_FIXTURES = {
    "p1": DEADLOCK,
    "p2": UNSAFE,
    "p3": REUSED_END,
    "p4-convert": STARVATION_NO_SENDER,
    "p4-add-flow": STARVATION_WITH_SENDER,
}

SOUND_FIXTURES = {
    "minimal": MINIMAL,
    "two-pool": TWO_POOL_SOUND,
    "event-gateway": EVENT_GATEWAY,
    "terminate": TERMINATE,
    "message-start": MESSAGE_START,
}
