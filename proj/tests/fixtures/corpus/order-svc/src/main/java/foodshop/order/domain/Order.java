package foodshop.order.domain;

import java.util.List;
import java.util.UUID;
import javax.persistence.Entity;

@Entity
public class Order {
    private UUID id;
    private String customer;
    private List<OrderLine> lines;
}
